#include "defo/cli.hpp"

#include "defo/io.hpp"
#include "defo/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>

namespace defo {

namespace {

const std::vector<std::string> kCommands = {"validate", "cohomology", "mc", "gauge", "decompose", "descent", "pipeline", "report"};

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string artin;
    std::uint64_t seed = 1;
    int trials = -1;
    int max_degree = -1;
    std::string format = "json";

    int trials_or(int d) const { return trials >= 0 ? trials : d; }
    int degree_or(int d) const { return max_degree >= 0 ? max_degree : d; }
    std::vector<NamedArtin> artins_or(const std::string& d) const { return parse_artin_option(artin.empty() ? d : artin); }
};

const std::string kDglaAxioms = "d∘d = 0, graded antisymmetry, Leibniz rule, graded Jacobi";
const std::string kScAxioms = "∂_{k+1}∂_j = ∂_j∂_k for k ≥ j, every face a dgLa map";

Json violations_json(const ValidationReport& r) {
    Json j = Json::array();
    for (const std::string& v : r.violations) j.push_back(v);
    return j;
}

void record_report(Section& sec, const std::string& subject, const std::string& identity, const ValidationReport& r) {
    sec.check(subject, identity).record(r.ok(), r.ok() ? "" : r.violations.front());
    if (!r.ok()) sec.data[subject] = violations_json(r);
}

Json hypothesis_json(const HypothesisReport& h) {
    Json j;
    j["strong"] = h.strong;
    j["weak"] = h.weak;
    Json neg = Json::object();
    for (size_t i = 0; i < h.neg.size(); ++i)
        for (size_t k = 0; k < h.neg[i].size(); ++k)
            if (h.neg[i][k] != 0) neg["H^" + std::to_string(h.lo + static_cast<int>(k)) + "(g_" + std::to_string(i) + ")"] = h.neg[i][k];
    j["negative cohomology"] = neg;
    if (!h.failures.empty()) {
        j["weak pattern failures"] = Json::array();
        for (const std::string& f : h.failures) j["weak pattern failures"].push_back(f);
    }
    return j;
}

std::vector<Document> load_all(const std::vector<std::string>& refs) {
    std::vector<Document> out;
    for (const std::string& r : refs) out.push_back(load_document(r));
    return out;
}

std::string where_of(const Document& d) { return d.origin + ":$"; }

std::vector<NamedDgla> dglas_from(const std::vector<Document>& docs) {
    std::vector<NamedDgla> out;
    for (const Document& d : docs) {
        if (d.schema != "defo.dgla/1") throw InputError(where_of(d) + ".schema", "expected a defo.dgla/1 document");
        out.emplace_back(d.origin, dgla_from_json(d.body, d.dir, where_of(d)));
    }
    return out;
}

std::vector<NamedSc> scs_from(const std::vector<Document>& docs) {
    std::vector<NamedSc> out;
    for (const Document& d : docs) {
        if (d.schema != "defo.scdgla/1") throw InputError(where_of(d) + ".schema", "expected a defo.scdgla/1 document");
        out.emplace_back(d.origin, sc_from_json(d.body, d.dir, where_of(d)));
    }
    return out;
}

void cmd_validate(Report& rep, const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw InputError("validate", "no input files");
    Section& sec = rep.section("validate");
    for (const Document& d : load_all(cfg.inputs)) {
        const std::string w = where_of(d);
        if (d.schema == "defo.dgla/1") {
            record_report(sec, d.origin, kDglaAxioms, validate_dgla(*dgla_from_json(d.body, d.dir, w)));
        } else if (d.schema == "defo.scdgla/1") {
            ScDgla g = sc_from_json(d.body, d.dir, w);
            ValidationReport r;
            for (size_t i = 0; i < g.levels.size(); ++i) r.merge(validate_dgla(*g.levels[i]), "level " + std::to_string(i) + ": ");
            r.merge(validate_sc(g));
            record_report(sec, d.origin, kScAxioms + ", every level a dgLa", r);
        } else if (d.schema == "defo.complex/1") {
            ChainComplexQ c = complex_from_json(d.body, w);
            ValidationReport r;
            for (int i = c.lo(); i + 1 < c.hi(); ++i)
                if (!is_zero(Mat(c.d(i + 1) * c.d(i)))) r.add("d^" + std::to_string(i + 1) + "∘d^" + std::to_string(i) + " ≠ 0");
            record_report(sec, d.origin, "d∘d = 0", r);
        } else if (d.schema == "defo.pipeline/1") {
            PipelineInput p = pipeline_from_json(d.body, w);
            ValidationReport r = validate_alg(*p.f.alg);
            r.merge(validate_mod(p.f), "F: ");
            r.merge(validate_mod(p.g), "G: ");
            if (r.ok() && !is_module_map(p.f, p.g, p.alpha)) r.add("alpha: α(a·v) ≠ a·α(v)");
            record_report(sec, d.origin, "F, G are A-modules and α(a·v) = a·α(v)", r);
        } else if (d.schema == "defo.element/1") {
            ElementInput e = element_from_json(d.body, d.dir, w);
            ValidationReport r = validate_dgla(e.ctx->dgla());
            if (!e.x.is_zero() && !e.x.homogeneous_of(1)) r.add("element is not of degree 1");
            record_report(sec, d.origin, "x ∈ L¹ ⊗ m_A, L a dgLa", r);
        } else if (d.schema == "defo.artin/1") {
            ArtinPtr a = artin_from_json(d.body, w);
            sec.check(d.origin, "m_A nilpotent").record(a->nilpotency() >= 1);
            sec.data[d.origin] = a->describe();
        } else {
            throw InputError(w + ".schema", "unknown schema '" + d.schema + "'");
        }
    }
}

void cmd_cohomology(Report& rep, const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw InputError("cohomology", "no input files");
    for (const Document& d : load_all(cfg.inputs)) {
        const std::string w = where_of(d);
        if (d.schema == "defo.dgla/1") {
            cohomology_section(rep, d.origin, dgla_from_json(d.body, d.dir, w)->complex());
        } else if (d.schema == "defo.scdgla/1") {
            ScDgla g = sc_from_json(d.body, d.dir, w);
            cohomology_section(rep, d.origin, total_complex(g).complex);
            rep.section(d.origin).data["hypothesis"] = hypothesis_json(check_hypothesis(g));
        } else if (d.schema == "defo.complex/1") {
            cohomology_section(rep, d.origin, complex_from_json(d.body, w));
        } else {
            throw InputError(w + ".schema", "cohomology needs a dgla, scdgla or complex document, got '" + d.schema + "'");
        }
    }
}

void cmd_mc(Report& rep, const RunConfig& cfg) {
    if (cfg.inputs.empty()) {
        mc_suite(rep, gauge_dglas(), cfg.artins_or("eps2,t3,xy2"), cfg.trials_or(10), cfg.seed);
        return;
    }
    Section& sec = rep.section("mc");
    for (const Document& d : load_all(cfg.inputs)) {
        if (d.schema != "defo.element/1") throw InputError(where_of(d) + ".schema", "expected a defo.element/1 document");
        ElementInput e = element_from_json(d.body, d.dir, where_of(d));
        Elem res = mc_residual(e.x);
        sec.check(d.origin, "dx + ½[x,x] = 0").record(res.is_zero(), "residual " + res.str());
        Json j;
        j["element"] = e.x.str();
        j["residual"] = res.is_zero() ? "0" : res.str();
        sec.data[d.origin] = j;
    }
}

void cmd_gauge(Report& rep, const RunConfig& cfg) {
    auto dglas = cfg.inputs.empty() ? gauge_dglas() : dglas_from(load_all(cfg.inputs));
    auto artins = cfg.artins_or("eps2,t3,xy2");
    gauge_suite(rep, dglas, artins, cfg.trials_or(10), cfg.seed);
    dictionary_suite(rep, dglas, artins, cfg.trials_or(10), cfg.seed);
}

void cmd_decompose(Report& rep, const RunConfig& cfg) {
    auto dglas = cfg.inputs.empty() ? gauge_dglas() : dglas_from(load_all(cfg.inputs));
    decompose_suite(rep, dglas, cfg.artins_or("eps2,t3,xy2"), cfg.trials_or(4), cfg.seed, cfg.degree_or(3));
}

std::vector<NamedSc> default_scs() {
    std::vector<NamedSc> out;
    for (const std::string& n : strong_sc_names()) out.emplace_back(n, builtin_sc(n));
    out.emplace_back("counterexample", builtin_sc("counterexample"));
    return out;
}

void cmd_descent(Report& rep, const RunConfig& cfg) {
    auto scs = cfg.inputs.empty() ? default_scs() : scs_from(load_all(cfg.inputs));
    Section& hyp = rep.section("hypothesis");
    for (const auto& [name, g] : scs) hyp.data[name] = hypothesis_json(check_hypothesis(g));
    const int trials = cfg.trials_or(2);
    if (trials == 0) return;
    comparison_suite(rep, scs, trials, cfg.seed, cfg.degree_or(4));
    descent_suite(rep, scs, cfg.artins_or("eps2,t3"), trials, cfg.seed);
}

void cmd_pipeline(Report& rep, const RunConfig& cfg) {
    std::vector<std::string> refs = cfg.inputs.empty() ? std::vector<std::string>{"builtin:simple_to_projective"} : cfg.inputs;
    const int md = cfg.degree_or(3);
    for (const Document& d : load_all(refs)) {
        if (d.schema != "defo.pipeline/1") throw InputError(where_of(d) + ".schema", "expected a defo.pipeline/1 document");
        PipelineInput p = pipeline_from_json(d.body, where_of(d));
        PipelineReport r = pipeline_case(rep, d.origin, p.f, p.g, p.alpha, md);
        Json j;
        j["H^i(Tot H)"] = Json::array();
        for (int i = 0; i <= md + 1; ++i) j["H^i(Tot H)"].push_back(r.h.at(i));
        auto arr = [](const std::vector<Index>& v) {
            Json a = Json::array();
            for (Index x : v) a.push_back(x);
            return a;
        };
        j["Ext^i(F,F)"] = arr(r.les.ext_ff);
        j["Ext^i(G,G)"] = arr(r.les.ext_gg);
        j["Ext^i(F,G)"] = arr(r.les.ext_fg);
        j["tangent dim H^1"] = r.tangent;
        j["obstruction dim H^2"] = r.obstruction;
        rep.section("pipeline").data[d.origin] = j;
    }
    if (cfg.trials_or(0) > 0) pipeline_suite(rep, cfg.trials_or(0), cfg.seed, md);
}

void cmd_report(Report& rep, const RunConfig& cfg) {
    const int trials = cfg.trials_or(2);
    auto dglas = gauge_dglas();
    auto artins = cfg.artins_or("eps2,t3,xy2");
    mc_suite(rep, dglas, artins, trials, cfg.seed);
    gauge_suite(rep, dglas, artins, trials, cfg.seed);
    dictionary_suite(rep, dglas, artins, trials, cfg.seed);
    decompose_suite(rep, dglas, artins, trials, cfg.seed, 3);
    auto scs = default_scs();
    Section& hyp = rep.section("hypothesis");
    for (const auto& [name, g] : scs) hyp.data[name] = hypothesis_json(check_hypothesis(g));
    comparison_suite(rep, scs, trials, cfg.seed, 4);
    descent_suite(rep, scs, parse_artin_option("eps2,t3"), trials, cfg.seed);
    pipeline_suite(rep, trials, cfg.seed, cfg.degree_or(3));
    appendix_suite(rep, trials, cfg.seed);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact deformation-theory checks: Maurer–Cartan calculus, descent and morphism deformations."};
    app.name("defo");
    app.add_option("command", cfg.command, "validate | cohomology | mc | gauge | decompose | descent | pipeline | report")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("inputs", cfg.inputs, "JSON documents or builtin:<name>");
    app.add_option("--artin", cfg.artin, "comma-separated Artin algebras (eps2, t<k>, xy2, m<r>^<k>) or a defo.artin/1 file");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--trials", cfg.trials, "random trials per case")->check(CLI::NonNegativeNumber);
    app.add_option("--format", cfg.format, "json | markdown")->check(CLI::IsMember({"json", "markdown"}));
    app.add_option("--max-degree", cfg.max_degree, "highest Ext degree, or polynomial degree bound")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }

    Report rep;
    rep.command = cfg.command;
    rep.config["command"] = cfg.command;
    rep.config["inputs"] = cfg.inputs;
    rep.config["seed"] = cfg.seed;
    if (cfg.trials >= 0) rep.config["trials"] = cfg.trials;
    if (cfg.max_degree >= 0) rep.config["max_degree"] = cfg.max_degree;
    if (!cfg.artin.empty()) rep.config["artin"] = cfg.artin;
    try {
        if (cfg.command == "validate") cmd_validate(rep, cfg);
        else if (cfg.command == "cohomology") cmd_cohomology(rep, cfg);
        else if (cfg.command == "mc") cmd_mc(rep, cfg);
        else if (cfg.command == "gauge") cmd_gauge(rep, cfg);
        else if (cfg.command == "decompose") cmd_decompose(rep, cfg);
        else if (cfg.command == "descent") cmd_descent(rep, cfg);
        else if (cfg.command == "pipeline") cmd_pipeline(rep, cfg);
        else cmd_report(rep, cfg);
    } catch (const InputError& e) {
        err << "input error: " << e.message() << "\n";
        return 2;
    } catch (const std::exception& e) {
        rep.errors.push_back(cfg.command + ": " + e.what());
    }
    out << rep.render(cfg.format);
    return rep.ok() ? 0 : 1;
}

}  // namespace defo
