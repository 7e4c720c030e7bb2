#include "defo/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace defo {

namespace {

namespace fs = std::filesystem;

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw InputError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string str_of(const Json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where, "expected a string");
    return j.get<std::string>();
}

int int_of(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where, "expected an integer");
    return j.get<int>();
}

int degree_key(const std::string& k, const std::string& where) {
    try {
        size_t used = 0;
        int d = std::stoi(k, &used);
        if (used == k.size()) return d;
    } catch (const std::exception&) {
    }
    throw InputError(where, "degree key '" + k + "' is not an integer");
}

Json read_file(const fs::path& p, const std::string& where) {
    std::ifstream in(p);
    if (!in) throw InputError(where, "cannot open '" + p.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(p.string(), std::string("JSON parse error: ") + e.what());
    }
}

template <typename F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError(where, e.what());
    } catch (const std::out_of_range& e) {
        throw InputError(where, e.what());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(where, e.what());
    }
}

void expect_schema(const Json& j, const std::string& schema, const std::string& where) {
    if (!j.is_object()) return;
    auto it = j.find("schema");
    if (it == j.end()) return;
    if (!it->is_string() || it->get<std::string>() != schema)
        throw InputError(where + ".schema", "expected schema '" + schema + "'");
}

DglaMap face_from_json(const Json& j, const DglaPtr& src, const DglaPtr& tgt, const std::string& where) {
    if (!j.is_object()) throw InputError(where, "expected a face map {degree: matrix}");
    Mat m = Mat::Zero(tgt->size(), src->size());
    for (const auto& [k, blk] : j.items()) {
        const int d = degree_key(k, where);
        const Index r = tgt->dim(d), c = src->dim(d);
        Mat blkm = matrix_from_json(blk, r, c, where + "." + k);
        if (r == 0 || c == 0) continue;
        m.block(tgt->offset(d), src->offset(d), r, c) = blkm;
    }
    return DglaMap{src, tgt, m};
}

}  // namespace

Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return guarded(where, [&] { return parse_rat(j.get<std::string>()); });
    throw InputError(where, "expected an integer or a \"p/q\" string");
}

Mat matrix_from_json(const Json& j, Index rows, Index cols, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected a matrix (array of rows)");
    if (rows == 0) {
        if (!j.empty()) throw InputError(where, "expected 0 rows, found " + std::to_string(j.size()));
        return Mat::Zero(0, cols);
    }
    if (static_cast<Index>(j.size()) != rows)
        throw InputError(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
    Mat m = Mat::Zero(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<size_t>(i)];
        const std::string w = where + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw InputError(w, "expected a row of " + std::to_string(cols) + " entries");
        for (Index c = 0; c < cols; ++c) m(i, c) = rat_from_json(row[static_cast<size_t>(c)], w + "[" + std::to_string(c) + "]");
    }
    return m;
}

Json rat_to_json(const Rat& r) {
    if (denominator(r) == 1) {
        std::string s = numerator(r).str();
        if (s.size() < 16) return std::stoll(s);
    }
    return r.str();
}

Json matrix_to_json(const Mat& m) {
    Json j = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(m(i, c)));
        j.push_back(row);
    }
    return j;
}

Document load_document(const std::string& ref) {
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) {
        const std::string name = ref.substr(prefix.size());
        Json body;
        body["builtin"] = name;
        auto dn = builtin_dgla_names();
        if (std::find(dn.begin(), dn.end(), name) != dn.end()) return Document{"defo.dgla/1", body, fs::current_path(), ref};
        auto sn = builtin_sc_names();
        if (std::find(sn.begin(), sn.end(), name) != sn.end()) return Document{"defo.scdgla/1", body, fs::current_path(), ref};
        for (const char* c : {"zero", "identity", "simple_to_projective"})
            if (name == c) {
                Json p;
                p["algebra"] = "a2";
                p["case"] = name;
                return Document{"defo.pipeline/1", p, fs::current_path(), ref};
            }
        throw InputError(ref, "unknown built-in '" + name + "'");
    }
    Json j = read_file(ref, ref);
    if (!j.is_object()) throw InputError(ref + ":$", "expected a JSON object");
    auto it = j.find("schema");
    if (it == j.end() || !it->is_string()) throw InputError(ref + ":$", "missing field 'schema'");
    return Document{it->get<std::string>(), j, fs::path(ref).parent_path(), ref};
}

ArtinPtr artin_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) return guarded(where, [&] { return artin_from_name(j.get<std::string>()); });
    expect_schema(j, "defo.artin/1", where);
    const int r = int_of(field(j, "vars", where), where + ".vars");
    if (r < 1) throw InputError(where + ".vars", "need at least one variable");
    const Json& id = field(j, "ideal", where);
    if (!id.is_array()) throw InputError(where + ".ideal", "expected an array of monomials");
    std::vector<Monomial> ideal;
    for (size_t i = 0; i < id.size(); ++i) {
        const std::string w = where + ".ideal[" + std::to_string(i) + "]";
        const std::string s = str_of(id[i], w);
        ideal.push_back(guarded(w, [&] { return parse_monomial(s, r); }));
    }
    return guarded(where, [&] { return make_artin(r, ideal); });
}

std::vector<std::pair<std::string, ArtinPtr>> parse_artin_option(const std::string& list) {
    std::vector<std::pair<std::string, ArtinPtr>> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item.size() > 5 && item.substr(item.size() - 5) == ".json") {
            Json j = read_file(item, "--artin");
            out.emplace_back(fs::path(item).stem().string(), artin_from_json(j, item + ":$"));
        } else {
            out.emplace_back(item, guarded("--artin", [&] { return artin_from_name(item); }));
        }
    }
    if (out.empty()) throw InputError("--artin", "no Artin algebra given");
    return out;
}

DglaPtr dgla_from_json(const Json& j, const fs::path& dir, const std::string& where) {
    (void)dir;
    expect_schema(j, "defo.dgla/1", where);
    if (auto it = j.find("builtin"); it != j.end())
        return guarded(where + ".builtin", [&] { return builtin_dgla(str_of(*it, where + ".builtin")); });
    const Json& deg = field(j, "degrees", where);
    if (!deg.is_object()) throw InputError(where + ".degrees", "expected {degree: [names]}");
    std::map<int, std::vector<std::string>> names;
    DglaBuilder b;
    std::map<std::string, int> index;
    for (const auto& [k, list] : deg.items()) {
        const std::string w = where + ".degrees." + k;
        const int d = degree_key(k, w);
        if (!list.is_array()) throw InputError(w, "expected an array of basis names");
        for (size_t i = 0; i < list.size(); ++i) names[d].push_back(str_of(list[i], w + "[" + std::to_string(i) + "]"));
    }
    for (const auto& [d, ns] : names)
        for (const std::string& n : ns) {
            if (index.count(n)) throw InputError(where + ".degrees", "duplicate basis name '" + n + "'");
            index[n] = b.add(n, d);
        }
    if (auto it = j.find("differential"); it != j.end()) {
        if (!it->is_object()) throw InputError(where + ".differential", "expected {degree: matrix}");
        for (const auto& [k, m] : it->items()) {
            const std::string w = where + ".differential." + k;
            const int d = degree_key(k, w);
            const auto& src = names[d];
            const auto& tgt = names[d + 1];
            Mat mat = matrix_from_json(m, static_cast<Index>(tgt.size()), static_cast<Index>(src.size()), w);
            for (Index r = 0; r < mat.rows(); ++r)
                for (Index c = 0; c < mat.cols(); ++c)
                    if (mat(r, c) != 0) b.set_d(src[static_cast<size_t>(c)], tgt[static_cast<size_t>(r)], mat(r, c));
        }
    }
    if (auto it = j.find("brackets"); it != j.end()) {
        if (!it->is_array()) throw InputError(where + ".brackets", "expected an array of bracket triples");
        for (size_t t = 0; t < it->size(); ++t) {
            const std::string w = where + ".brackets[" + std::to_string(t) + "]";
            const Json& e = (*it)[t];
            const std::string a = str_of(field(e, "i", w), w + ".i");
            const std::string c = str_of(field(e, "j", w), w + ".j");
            for (const std::string* n : {&a, &c})
                if (!index.count(*n)) throw InputError(w, "unknown basis name '" + *n + "'");
            const Json& v = field(e, "value", w);
            if (!v.is_array()) throw InputError(w + ".value", "expected [[name, coefficient], ...]");
            SparseVec sv;
            for (size_t q = 0; q < v.size(); ++q) {
                const std::string wq = w + ".value[" + std::to_string(q) + "]";
                if (!v[q].is_array() || v[q].size() != 2) throw InputError(wq, "expected [name, coefficient]");
                const std::string n = str_of(v[q][0], wq + "[0]");
                if (!index.count(n)) throw InputError(wq, "unknown basis name '" + n + "'");
                sv.emplace_back(index[n], rat_from_json(v[q][1], wq + "[1]"));
            }
            b.set_bracket(a, c, sv);
        }
    }
    return guarded(where, [&] { return b.build(); });
}

DglaPtr dgla_ref(const Json& j, const fs::path& dir, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.rfind("builtin:", 0) == 0) return guarded(where, [&] { return builtin_dgla(s.substr(8)); });
        const fs::path p = dir / s;
        Json doc = read_file(p, where);
        return dgla_from_json(doc, p.parent_path(), p.string() + ":$");
    }
    return dgla_from_json(j, dir, where);
}

ScDgla sc_from_json(const Json& j, const fs::path& dir, const std::string& where) {
    expect_schema(j, "defo.scdgla/1", where);
    if (auto it = j.find("builtin"); it != j.end())
        return guarded(where + ".builtin", [&] { return builtin_sc(str_of(*it, where + ".builtin")); });
    if (auto it = j.find("cover"); it != j.end()) {
        const std::string w = where + ".cover";
        CoverModel c;
        c.opens = int_of(field(*it, "opens", w), w + ".opens");
        c.top = int_of(field(*it, "top", w), w + ".top");
        if (c.opens < 1 || c.top < 0) throw InputError(w, "opens must be ≥ 1 and top ≥ 0");
        if (auto s = it->find("section"); s != it->end())
            return guarded(w, [&] { return cech_from_cover(uniform_cover(c.opens, c.top, dgla_ref(*s, dir, w + ".section"))); });
        const Json& secs = field(*it, "sections", w);
        if (!secs.is_object()) throw InputError(w + ".sections", "expected {\"i,j,...\": dgla}");
        auto parse_index = [&](const std::string& k, const std::string& wk) {
            std::vector<int> idx;
            std::stringstream ss(k);
            std::string part;
            while (std::getline(ss, part, ',')) idx.push_back(degree_key(part, wk));
            return idx;
        };
        for (const auto& [k, v] : secs.items()) c.sections[parse_index(k, w + ".sections")] = dgla_ref(v, dir, w + ".sections." + k);
        if (auto r = it->find("restrictions"); r != it->end()) {
            if (!r->is_array()) throw InputError(w + ".restrictions", "expected an array");
            for (size_t q = 0; q < r->size(); ++q) {
                const std::string wq = w + ".restrictions[" + std::to_string(q) + "]";
                const Json& e = (*r)[q];
                auto from = guarded(wq + ".from", [&] { return field(e, "from", wq).get<std::vector<int>>(); });
                auto to = guarded(wq + ".to", [&] { return field(e, "to", wq).get<std::vector<int>>(); });
                if (!c.sections.count(from) || !c.sections.count(to)) throw InputError(wq, "restriction between unknown multi-indices");
                c.restrictions[{from, to}] = face_from_json(field(e, "map", wq), c.sections[from], c.sections[to], wq + ".map");
            }
        }
        return guarded(w, [&] { return cech_from_cover(c); });
    }
    const Json& lv = field(j, "levels", where);
    if (!lv.is_array() || lv.empty()) throw InputError(where + ".levels", "expected a non-empty array of dgLas");
    ScDgla g;
    for (size_t i = 0; i < lv.size(); ++i) g.levels.push_back(dgla_ref(lv[i], dir, where + ".levels[" + std::to_string(i) + "]"));
    const Json& fc = field(j, "faces", where);
    if (!fc.is_array()) throw InputError(where + ".faces", "expected an array of face lists");
    g.faces.resize(lv.size());
    for (size_t i = 1; i < lv.size(); ++i) {
        const std::string wi = where + ".faces[" + std::to_string(i) + "]";
        if (i >= fc.size() || !fc[i].is_array()) throw InputError(wi, "missing face maps into level " + std::to_string(i));
        for (size_t k = 0; k <= i; ++k) {
            const std::string wk = wi + "[" + std::to_string(k) + "]";
            if (k >= fc[i].size()) throw InputError(wk, "missing face map");
            g.faces[i].push_back(face_from_json(fc[i][k], g.levels[i - 1], g.levels[i], wk));
        }
        if (fc[i].size() > i + 1) throw InputError(wi, "too many face maps into level " + std::to_string(i));
    }
    return g;
}

ChainComplexQ complex_from_json(const Json& j, const std::string& where) {
    expect_schema(j, "defo.complex/1", where);
    const int lo = int_of(field(j, "lo", where), where + ".lo");
    const Json& dj = field(j, "dims", where);
    if (!dj.is_array() || dj.empty()) throw InputError(where + ".dims", "expected a non-empty array");
    std::vector<Index> dims;
    for (size_t i = 0; i < dj.size(); ++i) {
        const int d = int_of(dj[i], where + ".dims[" + std::to_string(i) + "]");
        if (d < 0) throw InputError(where + ".dims[" + std::to_string(i) + "]", "negative dimension");
        dims.push_back(d);
    }
    std::vector<Mat> diffs;
    const Json& dd = field(j, "differentials", where);
    if (!dd.is_array() || dd.size() + 1 != dims.size())
        throw InputError(where + ".differentials", "expected " + std::to_string(dims.size() - 1) + " matrices");
    for (size_t i = 0; i < dd.size(); ++i)
        diffs.push_back(matrix_from_json(dd[i], dims[i + 1], dims[i], where + ".differentials[" + std::to_string(i) + "]"));
    return guarded(where, [&] { return ChainComplexQ(lo, dims, diffs); });
}

AlgPtr finalg_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "a2") return a2_algebra();
        throw InputError(where, "unknown algebra '" + j.get<std::string>() + "'");
    }
    const Json& q = field(j, "quiver", where);
    const int n = int_of(field(q, "vertices", where + ".quiver"), where + ".quiver.vertices");
    if (n < 1) throw InputError(where + ".quiver.vertices", "need at least one vertex");
    std::vector<std::pair<int, int>> arrows;
    if (auto it = q.find("arrows"); it != q.end()) {
        if (!it->is_array()) throw InputError(where + ".quiver.arrows", "expected [[tail, head], ...]");
        for (size_t i = 0; i < it->size(); ++i) {
            const std::string w = where + ".quiver.arrows[" + std::to_string(i) + "]";
            const Json& a = (*it)[i];
            if (!a.is_array() || a.size() != 2) throw InputError(w, "expected [tail, head]");
            const int t = int_of(a[0], w + "[0]"), h = int_of(a[1], w + "[1]");
            if (t < 0 || t >= n || h < 0 || h >= n) throw InputError(w, "vertex out of range");
            arrows.emplace_back(t, h);
        }
    }
    return guarded(where, [&] { return path_algebra(n, arrows); });
}

FinMod finmod_from_json(const AlgPtr& a, const Json& j, const std::string& where) {
    if (j.is_string()) {
        if (a->vertices != 2 || a->arrows.size() != 1) throw InputError(where, "named modules need the A₂ algebra");
        return guarded(where, [&] { return a2_module(a, j.get<std::string>()); });
    }
    auto vertex = [&](const char* key) {
        const int v = int_of(j.at(key), where + "." + key);
        if (v < 0 || v >= a->vertices) throw InputError(where + "." + key, "vertex out of range");
        return v;
    };
    if (j.is_object() && j.contains("simple")) return simple_module(a, vertex("simple"));
    if (j.is_object() && j.contains("projective")) return proj_module(a, vertex("projective"));
    const Json& r = field(j, "representation", where);
    const std::string w = where + ".representation";
    const Json& dj = field(r, "dims", w);
    if (!dj.is_array() || static_cast<int>(dj.size()) != a->vertices)
        throw InputError(w + ".dims", "expected " + std::to_string(a->vertices) + " dimensions");
    std::vector<Index> dims;
    for (size_t i = 0; i < dj.size(); ++i) dims.push_back(int_of(dj[i], w + ".dims[" + std::to_string(i) + "]"));
    std::vector<Mat> maps;
    const Json& aj = field(r, "arrows", w);
    if (!aj.is_array() || aj.size() != a->arrows.size())
        throw InputError(w + ".arrows", "expected " + std::to_string(a->arrows.size()) + " matrices");
    for (size_t i = 0; i < aj.size(); ++i) {
        auto [t, h] = a->arrows[i];
        maps.push_back(matrix_from_json(aj[i], dims[static_cast<size_t>(h)], dims[static_cast<size_t>(t)], w + ".arrows[" + std::to_string(i) + "]"));
    }
    return guarded(where, [&] { return representation(a, dims, maps); });
}

PipelineInput pipeline_from_json(const Json& j, const std::string& where) {
    expect_schema(j, "defo.pipeline/1", where);
    AlgPtr a = finalg_from_json(field(j, "algebra", where), where + ".algebra");
    if (auto it = j.find("case"); it != j.end()) {
        const std::string name = str_of(*it, where + ".case");
        for (const A2Case& c : a2_canonical_cases(a))
            if (c.name == name) return PipelineInput{name, c.f, c.g, c.alpha};
        throw InputError(where + ".case", "unknown case '" + name + "'");
    }
    PipelineInput p;
    p.name = j.contains("name") ? str_of(j["name"], where + ".name") : "input";
    p.f = finmod_from_json(a, field(j, "F", where), where + ".F");
    p.g = finmod_from_json(a, field(j, "G", where), where + ".G");
    p.alpha = matrix_from_json(field(j, "alpha", where), p.g.dim, p.f.dim, where + ".alpha");
    return p;
}

ElementInput element_from_json(const Json& j, const fs::path& dir, const std::string& where) {
    expect_schema(j, "defo.element/1", where);
    DglaPtr l = dgla_ref(field(j, "dgla", where), dir, where + ".dgla");
    ArtinPtr a = artin_from_json(field(j, "artin", where), where + ".artin");
    ElementInput out;
    out.name = j.contains("name") ? str_of(j["name"], where + ".name") : "element";
    out.ctx = tensor_artin(l, a);
    out.x = Elem(out.ctx, 0);
    const Json& terms = field(j, "terms", where);
    if (!terms.is_array()) throw InputError(where + ".terms", "expected an array");
    for (size_t i = 0; i < terms.size(); ++i) {
        const std::string w = where + ".terms[" + std::to_string(i) + "]";
        const Json& t = terms[i];
        const std::string bn = str_of(field(t, "basis", w), w + ".basis");
        const int bi = guarded(w + ".basis", [&] { return l->index_of(bn); });
        if (bi < 0) throw InputError(w + ".basis", "unknown basis name '" + bn + "'");
        const std::string mn = str_of(field(t, "monomial", w), w + ".monomial");
        const int ci = guarded(w + ".monomial", [&] { return a->index_of(parse_monomial(mn, a->vars())); });
        if (ci < 0) throw InputError(w + ".monomial", "'" + mn + "' is not a basis monomial of m_A");
        out.x.add(TermKey{bi, ci, FormKey{}}, rat_from_json(field(t, "value", w), w + ".value"));
    }
    return out;
}

}  // namespace defo
