#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "vtt/composer.hpp"
#include "vtt/dsl.hpp"
#include "vtt/error.hpp"
#include "vtt/expression.hpp"
#include "vtt/interchange.hpp"
#include "vtt/renderer.hpp"
#include "vtt/semantics.hpp"
#include "vtt/service.hpp"
#include "vtt/syntax.hpp"
#include "vtt/tex.hpp"
#include "vtt/validator.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vtt::Error(vtt::ErrorCode::io, "cannot read '" + path + "'", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vtt::Error(vtt::ErrorCode::io, "cannot write '" + path.string() + "'", path.string());
  out << text;
}

// Registries come either as interchange JSON or as DSL source.
vtt::Registry load_registry(const std::string& path, vtt::BuildOptions options = {}) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return vtt::import_registry(text, options);
  return vtt::compile(vtt::parse_document(text, path), nullptr, options);
}

vtt::GlyphRef glyph_ref(const std::string& arg) {
  if (arg.find('(') != std::string::npos) return {{}, vtt::parse_glyph(arg)};
  return {arg, std::nullopt};
}

std::string file_stem(const std::string& arg, const std::string& canonical) {
  if (arg.find('(') == std::string::npos) return arg;
  std::string out;
  for (char c : canonical) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    if (keep) out += c;
    else if (!out.empty() && out.back() != '_') out += '_';
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vtt: visual type theory compiler"};
  app.require_subcommand(1);

  std::string src, out, registry_path, glyph, literal, radical, bind = "127.0.0.1:8080";
  double size = vtt::kDefaultSize;
  std::uint64_t limit = 0;

  auto* compile = app.add_subcommand("compile", "compile DSL source to an interchange document");
  compile->add_option("src", src, "definition source")->required();
  compile->add_option("-o,--output", out, "output file (stdout when omitted)");

  auto* validate = app.add_subcommand("validate", "lint a registry");
  validate->add_option("registry", registry_path)->required();
  bool json = false;
  validate->add_flag("--json", json, "print the report as JSON");

  auto* render = app.add_subcommand("render", "render one glyph to SVG");
  render->add_option("registry", registry_path)->required();
  render->add_option("--glyph", glyph, "concept id, radical id or glyph literal")->required();
  render->add_option("--size", size)->check(CLI::PositiveNumber);
  render->add_option("-o,--output", out, "output directory")->required();

  auto* lookup = app.add_subcommand("lookup", "resolve a glyph literal to its concept");
  lookup->add_option("registry", registry_path)->required();
  lookup->add_option("--glyph-literal", literal)->required();

  auto* enumerate = app.add_subcommand("enumerate", "list every mark assignment on a radical");
  enumerate->add_option("registry", registry_path)->required();
  enumerate->add_option("--radical", radical)->required();
  enumerate->add_option("--limit", limit, "print at most N glyphs");

  auto* emit_tex = app.add_subcommand("emit-tex", "write a TeX macro package");
  emit_tex->add_option("registry", registry_path)->required();
  emit_tex->add_option("-o,--output", out, "output directory")->required();

  auto* serve = app.add_subcommand("serve", "serve the read-only HTTP API");
  serve->add_option("registry", registry_path)->required();
  serve->add_option("--bind", bind, "host:port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compile) {
      const auto reg = vtt::compile(vtt::parse_document(read_file(src), src));
      const std::string doc = vtt::export_registry(reg);
      if (out.empty()) std::cout << doc;
      else write_file(out, doc);
      return 0;
    }
    if (*validate) {
      const auto reg = load_registry(registry_path, {.enforce_meaning_map = false});
      const auto report = vtt::validate_registry(reg);
      std::cout << (json ? report.to_json() : report.to_text());
      return report.ok() ? 0 : 1;
    }
    if (*render) {
      const auto reg = load_registry(registry_path);
      const auto g = vtt::resolve_ref(glyph_ref(glyph), reg);
      const fs::path file = fs::path(out) / (file_stem(glyph, vtt::canonical_id(g, reg)) + ".svg");
      write_file(file, vtt::render_svg(g, reg, size));
      std::cout << file.string() << '\n';
      return 0;
    }
    if (*lookup) {
      const auto reg = load_registry(registry_path);
      const auto g = vtt::parse_glyph(literal);
      vtt::validate_glyph(g, reg);
      std::cout << vtt::canonical_id(g, reg) << '\t';
      if (const auto* c = vtt::lookup_concept(g, reg)) {
        std::cout << c->id << '\t' << c->name << '\n';
      } else {
        std::cout << "unbound\n";
      }
      return 0;
    }
    if (*enumerate) {
      const auto reg = load_registry(registry_path);
      const auto family = vtt::enumerate_family(reg, radical);
      std::uint64_t n = 0;
      for (const auto& g : family) {
        if (limit && n++ >= limit) break;
        std::cout << vtt::canonical_id(g, reg) << '\n';
      }
      std::cerr << family.size() << " glyphs\n";
      return 0;
    }
    if (*emit_tex) {
      const auto reg = load_registry(registry_path);
      const auto pkg = vtt::emit_tex(reg, vtt::default_tex_selection(reg));
      write_file(fs::path(out) / "vtt.sty", pkg.sty);
      write_file(fs::path(out) / "vtt-index.txt", pkg.index);
      for (const auto& art : pkg.artwork) write_file(fs::path(out) / art.file, art.svg);
      std::cout << pkg.artwork.size() << " macros written to " << out << '\n';
      return 0;
    }
    if (*serve) {
      const auto colon = bind.rfind(':');
      int port = 0;
      try {
        if (colon == std::string::npos) throw std::invalid_argument(bind);
        port = std::stoi(bind.substr(colon + 1));
      } catch (const std::exception&) {
        std::cerr << "vtt: --bind expects host:port\n";
        return 2;
      }
      const std::string host = bind.substr(0, colon);
      vtt::Service service(std::make_shared<const vtt::Registry>(load_registry(registry_path)));
      std::cerr << "vtt: serving on " << host << ':' << port << '\n';
      const bool ok = vtt::serve(service, host, port, [&] {
        return std::make_shared<const vtt::Registry>(load_registry(registry_path));
      });
      if (!ok) {
        std::cerr << "vtt: cannot bind " << bind << '\n';
        return 1;
      }
      return 0;
    }
  } catch (const vtt::Error& e) {
    std::cerr << "vtt: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
