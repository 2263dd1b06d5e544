#include "vtt/tex.hpp"

#include <cctype>
#include <map>
#include <set>

#include "vtt/composer.hpp"
#include "vtt/error.hpp"
#include "vtt/renderer.hpp"
#include "vtt/semantics.hpp"
#include "vtt/syntax.hpp"

namespace vtt {
namespace {

constexpr const char* kDigitNames[] = {"Zero", "One", "Two",   "Three", "Four",
                                       "Five", "Six", "Seven", "Eight", "Nine"};

}  // namespace

std::string tex_macro_name(const std::string& canonical_id) {
  std::string out = "\\vtt";
  bool word_start = true;
  for (char c : canonical_id) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isdigit(u)) {
      out += kDigitNames[c - '0'];
      word_start = true;
    } else if (std::isalpha(u)) {
      out += word_start ? static_cast<char>(std::toupper(u)) : c;
      word_start = false;
    } else {
      word_start = true;
    }
  }
  return out;
}

std::vector<std::string> default_tex_selection(const Registry& registry) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& b : registry.bindings()) {
    auto id = canonical_id(b.glyph, registry);
    if (seen.insert(id).second) out.push_back(std::move(id));
  }
  return out;
}

TexPackage emit_tex(const Registry& registry, const std::vector<std::string>& selection,
                    double size, const std::string& package) {
  TexPackage pkg;
  pkg.sty = "\\NeedsTeXFormat{LaTeX2e}\n"
            "\\ProvidesPackage{" + package + "}[glyph macros]\n"
            "\\RequirePackage{svg}\n"
            "\\newcommand{\\vttglyph}[1]{\\includesvg[height=1.2em]{#1}}\n";
  pkg.index = "% macro\tconcept\n";

  std::map<std::string, std::string> owners;  // macro -> canonical id
  for (const auto& literal : selection) {
    const Glyph glyph = canonicalize(parse_glyph(literal), registry);
    const std::string id = canonical_id(glyph, registry);
    const std::string macro = tex_macro_name(id);
    auto [it, fresh] = owners.emplace(macro, id);
    if (!fresh) {
      if (it->second == id) continue;
      throw Error(ErrorCode::name_collision,
                  "glyphs " + it->second + " and " + id + " both map to macro " + macro, id);
    }
    const std::string file = macro.substr(1);
    pkg.artwork.push_back({file + ".svg", render_svg(glyph, registry, size)});
    pkg.sty += "\\newcommand{" + macro + "}{\\vttglyph{" + file + "}}\n";
    const Concept* c = lookup_concept(glyph, registry);
    pkg.index += macro + "\t" + (c ? c->name : std::string("unbound")) + "\n";
  }
  pkg.sty += "\\endinput\n";
  return pkg;
}

}  // namespace vtt
