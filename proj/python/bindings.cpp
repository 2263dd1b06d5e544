// Python bindings. Glyphs cross the boundary as glyph literals and come back
// as canonical ids; structured results are JSON-shaped dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>

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

namespace py = pybind11;
using namespace vtt;

namespace {

using RegistryPtr = std::shared_ptr<Registry>;

Glyph glyph(const std::string& literal, const Registry& reg) {
  Glyph g = parse_glyph(literal);
  validate_glyph(g, reg);
  return g;
}

std::string canon(const Glyph& g, const Registry& reg) { return canonical_id(g, reg); }

std::vector<std::string> literal_list(const LiteralConjunction& lits) {
  std::vector<std::string> out;
  for (const auto& l : lits) out.push_back(format_literal(l));
  return out;
}

LiteralConjunction parse_literals(const std::vector<std::string>& texts) {
  LiteralConjunction out;
  for (const auto& t : texts) out.insert(parse_literal(t));
  return out;
}

py::dict finding_dict(const Finding& f) {
  py::dict d;
  d["severity"] = std::string(to_string(f.severity));
  d["code"] = f.code;
  d["message"] = f.message;
  d["subjects"] = f.subjects;
  return d;
}

RegistryPtr compile_text(const std::string& text, const std::string& path, bool lenient) {
  return std::make_shared<Registry>(
      compile(parse_document(text, path), nullptr, {.enforce_meaning_map = !lenient}));
}

}  // namespace

PYBIND11_MODULE(_vtt, m) {
  m.doc() = "visual type theory compiler";

  static py::exception<Error> error_type(m, "VttError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("subject") = e.subject();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Registry, RegistryPtr>(m, "Registry")
      .def_property_readonly("radicals",
                             [](const Registry& r) {
                               std::vector<std::string> ids;
                               for (const auto& x : r.radicals()) ids.push_back(x.id);
                               return ids;
                             })
      .def_property_readonly("concepts",
                             [](const Registry& r) {
                               std::vector<std::string> ids;
                               for (const auto& x : r.concepts()) ids.push_back(x.id);
                               return ids;
                             })
      .def_property_readonly("rules",
                             [](const Registry& r) {
                               std::vector<std::string> ids;
                               for (const auto& x : r.rules()) ids.push_back(x.id);
                               return ids;
                             })
      .def("to_json", [](const Registry& r) { return export_registry(r); })
      .def("__eq__", [](const Registry& a, const Registry& b) { return a == b; });

  m.def("compile", &compile_text, py::arg("text"), py::arg("path") = "", py::arg("lenient") = false,
        "Compile definition-language source into a registry.");
  m.def(
      "load_json",
      [](const std::string& text, bool lenient) {
        return std::make_shared<Registry>(import_registry(text, {.enforce_meaning_map = !lenient}));
      },
      py::arg("text"), py::arg("lenient") = false);
  m.def("format_source", [](const std::string& text) { return print_document(parse_document(text)); });

  m.def("canonical_id", [](RegistryPtr r, const std::string& g) { return canon(glyph(g, *r), *r); });
  m.def("constraints",
        [](RegistryPtr r, const std::string& g) { return literal_list(constraint_of(glyph(g, *r), *r)); });
  m.def("lookup", [](RegistryPtr r, const std::string& g) -> std::optional<std::string> {
    const Concept* c = lookup_concept(glyph(g, *r), *r);
    if (!c) return std::nullopt;
    return c->id;
  });
  m.def("refines", [](RegistryPtr r, const std::string& a, const std::string& b) {
    return refines(glyph(a, *r), glyph(b, *r), *r);
  });
  m.def("equivalent", [](RegistryPtr r, const std::string& a, const std::string& b) {
    return equivalent(glyph(a, *r), glyph(b, *r), *r);
  });
  m.def(
      "denote",
      [](RegistryPtr r, const std::string& g, const std::set<std::string>& carrier,
         const std::map<std::string, std::set<std::string>>& valuation) {
        UniverseModel model{carrier, valuation};
        return denote(glyph(g, *r), model, *r);
      },
      py::arg("registry"), py::arg("glyph"), py::arg("carrier"), py::arg("valuation"));
  m.def(
      "enumerate",
      [](RegistryPtr r, const std::string& radical, std::optional<std::vector<std::string>> marks,
         std::optional<std::uint64_t> limit) {
        const auto fam = enumerate_family(*r, radical, {.marks = std::move(marks)});
        const std::uint64_t n = limit ? std::min(*limit, fam.size()) : fam.size();
        std::vector<std::string> out;
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(canon(fam.at(i), *r));
        return out;
      },
      py::arg("registry"), py::arg("radical"), py::arg("marks") = std::nullopt,
      py::arg("limit") = std::nullopt);
  m.def("family_size", [](RegistryPtr r, const std::string& radical) {
    return enumerate_family(*r, radical).size();
  });
  m.def("invert", [](RegistryPtr r, const std::vector<std::string>& literals, const std::string& radical) {
    return canon(invert(parse_literals(literals), radical, *r), *r);
  });

  m.def(
      "place_mark",
      [](RegistryPtr r, const std::string& g, const std::string& region, std::optional<std::string> mark) {
        return canon(place_mark(glyph(g, *r), region, mark, *r), *r);
      },
      py::arg("registry"), py::arg("glyph"), py::arg("region"), py::arg("mark"));
  m.def("apply_derivation", [](RegistryPtr r, const std::string& g, const std::string& rule) {
    return canon(apply_derivation(glyph(g, *r), rule, *r), *r);
  });
  m.def(
      "combine",
      [](RegistryPtr r, const std::string& g, const std::string& target, std::optional<std::string> region) {
        return canon(combine(glyph(g, *r), target, *r, region), *r);
      },
      py::arg("registry"), py::arg("glyph"), py::arg("target"), py::arg("region") = std::nullopt);
  m.def("abbreviate", [](RegistryPtr r, const std::string& g) { return canon(abbreviate(glyph(g, *r), *r), *r); });
  m.def("expand", [](RegistryPtr r, const std::string& g) { return canon(expand(glyph(g, *r), *r), *r); });
  m.def("expand_region", [](RegistryPtr r, const std::string& g, const std::string& region, double scale) {
    return canon(expand_region(glyph(g, *r), region, scale, *r), *r);
  });
  m.def("is_irregular", [](RegistryPtr r, const std::string& g) { return is_irregular(glyph(g, *r), *r); });
  m.def("resolve", [](RegistryPtr r, const std::string& ref) {
    GlyphRef gr = ref.find('(') == std::string::npos ? GlyphRef{ref, std::nullopt}
                                                     : GlyphRef{{}, parse_glyph(ref)};
    return canon(resolve_ref(gr, *r), *r);
  });

  m.def(
      "render_svg",
      [](RegistryPtr r, const std::string& g, double size) { return render_svg(glyph(g, *r), *r, size); },
      py::arg("registry"), py::arg("glyph"), py::arg("size") = kDefaultSize);
  m.def(
      "render_expression",
      [](RegistryPtr r, const std::string& text, double size) {
        return to_svg(render_expression(parse_expression(text), *r, size));
      },
      py::arg("registry"), py::arg("expression"), py::arg("size") = kDefaultSize);
  m.def(
      "emit_tex",
      [](RegistryPtr r, std::optional<std::vector<std::string>> selection, double size) {
        const auto pkg = emit_tex(*r, selection ? *selection : default_tex_selection(*r), size);
        py::dict art;
        for (const auto& a : pkg.artwork) art[py::str(a.file)] = a.svg;
        py::dict d;
        d["sty"] = pkg.sty;
        d["index"] = pkg.index;
        d["artwork"] = art;
        return d;
      },
      py::arg("registry"), py::arg("selection") = std::nullopt, py::arg("size") = 100.0);

  m.def("validate", [](RegistryPtr r) {
    const LintReport report = validate_registry(*r);
    py::list findings;
    for (const auto& f : report.findings) findings.append(finding_dict(f));
    py::dict d;
    d["ok"] = report.ok();
    d["findings"] = findings;
    d["density"] = report.density_table;
    return d;
  });
  m.def("density", [](RegistryPtr r, const std::string& g) { return density(glyph(g, *r), *r); });

  py::class_<Service>(m, "Service")
      .def(py::init([](RegistryPtr r) { return std::make_unique<Service>(r); }))
      .def("swap", [](Service& s, RegistryPtr r) { s.swap(r); })
      .def(
          "respond",
          [](const Service& s, const std::string& method, const std::string& path,
             const std::map<std::string, std::string>& query, const std::string& body) {
            HttpResponse res;
            {
              py::gil_scoped_release release;
              res = s.respond({method, path, query, body});
            }
            return py::make_tuple(res.status, res.content_type, res.body);
          },
          py::arg("method"), py::arg("path"), py::arg("query") = std::map<std::string, std::string>{},
          py::arg("body") = "");
}
