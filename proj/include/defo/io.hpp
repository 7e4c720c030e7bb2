#pragma once

#include "defo/catalog.hpp"
#include "defo/report.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace defo {

/// Malformed input; `where` is a JSON path such as $.faces[2][1] (prefixed by the file).
struct InputError : std::runtime_error {
    std::string where;
    InputError(std::string where, const std::string& what) : std::runtime_error(what), where(std::move(where)) {}
    std::string message() const { return where + ": " + what(); }
};

/// A parsed input document: its schema tag, content and the file it came from (for relative references).
struct Document {
    std::string schema;
    Json body;
    std::filesystem::path dir;
    std::string origin;  // file path or builtin:<name>
};

/// Reads a file, or resolves builtin:<name> against the built-in dgLas and diagrams.
Document load_document(const std::string& ref);

Rat rat_from_json(const Json& j, const std::string& where);
Mat matrix_from_json(const Json& j, Index rows, Index cols, const std::string& where);
Json rat_to_json(const Rat& r);
Json matrix_to_json(const Mat& m);

/// {"vars": r, "ideal": ["x1^2", ...]} or a name such as "t3".
ArtinPtr artin_from_json(const Json& j, const std::string& where);
/// Comma-separated names, or a path to a defo.artin/1 document.
std::vector<std::pair<std::string, ArtinPtr>> parse_artin_option(const std::string& list);

/// defo.dgla/1: {"degrees": {"0": ["e","f","h"], ...}, "differential": {"k": matrix dim(k+1) x dim(k)},
/// "brackets": [{"i": "e", "j": "f", "value": [["h", 1]]}]}, or {"builtin": name}.
DglaPtr dgla_from_json(const Json& j, const std::filesystem::path& dir, const std::string& where);
/// A dgLa given inline, as builtin:<name>, or as a path relative to `dir`.
DglaPtr dgla_ref(const Json& j, const std::filesystem::path& dir, const std::string& where);
/// defo.scdgla/1: {"levels": [refs], "faces": [[], [map, map], ...]} with a map {"k": matrix} per degree;
/// {"cover": {"opens", "top", "section" | "sections", "restrictions"}}; or {"builtin": name}.
ScDgla sc_from_json(const Json& j, const std::filesystem::path& dir, const std::string& where);
/// defo.complex/1: {"lo": int, "dims": [..], "differentials": [matrices]}.
ChainComplexQ complex_from_json(const Json& j, const std::string& where);

/// "a2" or {"quiver": {"vertices": n, "arrows": [[tail, head], ...]}}.
AlgPtr finalg_from_json(const Json& j, const std::string& where);
/// "S1", "S2", "P1", "P2", "0" (A₂ only), {"simple": v}, {"projective": v} or
/// {"representation": {"dims": [..], "arrows": [matrices]}}.
FinMod finmod_from_json(const AlgPtr& a, const Json& j, const std::string& where);

struct PipelineInput {
    std::string name;
    FinMod f, g;
    Mat alpha;
};
/// defo.pipeline/1: {"algebra", "F", "G", "alpha": matrix dim G x dim F}.
PipelineInput pipeline_from_json(const Json& j, const std::string& where);

struct ElementInput {
    std::string name;
    NilpPtr ctx;
    Elem x;
};
/// defo.element/1: {"dgla": ref, "artin": name or {vars, ideal}, "terms": [{"basis": name, "monomial": "t^2", "value": q}]}.
ElementInput element_from_json(const Json& j, const std::filesystem::path& dir, const std::string& where);

}  // namespace defo
