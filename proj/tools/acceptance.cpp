// Runs the eight acceptance criteria and prints one verdict line per criterion.
#include "defo/cli.hpp"
#include "defo/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace defo;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
    std::vector<std::string> problems;
};

long total_checks(const Report& r, long* passed = nullptr) {
    long t = 0, p = 0;
    for (const Section& s : r.sections)
        for (const Check& c : s.checks) {
            t += c.total;
            p += c.passed;
        }
    if (passed) *passed = p;
    return t;
}

// Trials summed over all subjects for checks whose identity contains `needle`.
long trials_of(const Report& r, const std::string& section, const std::string& needle) {
    long t = 0;
    for (const Section& s : r.sections)
        if (s.name == section)
            for (const Check& c : s.checks)
                if (c.identity.find(needle) != std::string::npos) t += c.total;
    return t;
}

Outcome from_report(const Report& r) {
    Outcome o;
    long passed = 0;
    const long total = total_checks(r, &passed);
    o.pass = r.ok() && total > 0;
    o.summary = std::to_string(passed) + "/" + std::to_string(total) + " checks";
    for (const Section& s : r.sections)
        for (const Check& c : s.checks)
            if (!c.ok()) o.problems.push_back(s.name + " / " + c.subject + " / " + c.identity + ": " + c.failure);
    for (const std::string& e : r.errors) o.problems.push_back("error: " + e);
    return o;
}

void require(Outcome& o, bool cond, const std::string& what) {
    if (cond) return;
    o.pass = false;
    o.problems.push_back("coverage: " + what);
}

std::vector<NamedSc> strong_scs() {
    std::vector<NamedSc> out;
    for (const std::string& n : strong_sc_names()) out.emplace_back(n, builtin_sc(n));
    return out;
}

std::vector<NamedArtin> artins(const std::vector<std::string>& names) {
    std::vector<NamedArtin> out;
    for (const std::string& n : names) out.emplace_back(n, artin_from_name(n));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 2024;
    std::string report_dir;
    CLI::App app{"Acceptance criteria 1-8"};
    app.add_option("--seed", seed, "random seed");
    app.add_option("--report-dir", report_dir, "write a markdown report per criterion into this directory");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        int id;
        std::string title;
        double limit;  // seconds, 0 = none
        std::function<Outcome(Report&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "gauge action suite", 60,
         [&](Report& r) {
             gauge_suite(r, gauge_dglas(), default_artins(), 50, seed);
             Outcome o = from_report(r);
             for (const Check& c : r.sections.front().checks) require(o, c.total >= 50, c.subject + " has fewer than 50 seeds");
             require(o, r.sections.front().checks.size() == 36, "expected 9 cases x 4 identities");
             return o;
         }},
        {2, "decomposition round trips", 60,
         [&](Report& r) {
             decompose_suite(r, gauge_dglas(), default_artins(), 50, seed, 3);
             Outcome o = from_report(r);
             for (const char* id : {"decompose_1var(e^{p(t)}*x)", "decompose_2var(e^{r(t,s,ds)}*x)", "= ξ for (p, x)", "= ξ for (r, x)"})
                 require(o, trials_of(r, "decompose", id) >= 50, std::string("fewer than 50 instances of ") + id);
             return o;
         }},
        {3, "gauge/homotopy groupoid dictionary", 0,
         [&](Report& r) {
             dictionary_suite(r, gauge_dglas(), default_artins(), 10, seed);
             Outcome o = from_report(r);
             const Json& d = r.sections.front().data;
             const long eq = d["equivalent pairs"].get<long>(), ne = d["non-equivalent pairs"].get<long>();
             require(o, eq + ne >= 25, "fewer than 25 morphism pairs");
             require(o, eq > 0 && ne > 0, "both equivalent and non-equivalent pairs must occur");
             o.summary += ", " + std::to_string(eq) + " equivalent / " + std::to_string(ne) + " non-equivalent pairs";
             return o;
         }},
        {4, "Thom-Whitney comparison", 0,
         [&](Report& r) {
             comparison_suite(r, strong_scs(), 2, seed, 4);
             Outcome o = from_report(r);
             require(o, trials_of(r, "comparison", "∫∘W = id") > 0 && trials_of(r, "comparison", "∫∘d = D∘∫") > 0, "chain-map checks ran");
             require(o, trials_of(r, "comparison", "H^i(Tot g_{≤2})") >= 9, "truncation checked on at least 3 diagrams");
             return o;
         }},
        {5, "descent", 300,
         [&](Report& r) {
             auto scs = strong_scs();
             scs.emplace_back("counterexample", builtin_sc("counterexample"));
             descent_suite(r, scs, artins({"eps2", "t3"}), 2, seed);
             Outcome o = from_report(r);
             require(o, trials_of(r, "descent", "π₀ comparison reports failure") >= 1, "counterexample π₀ checked");
             require(o, trials_of(r, "descent", "Φ₂(lift(l, m, u))") >= 6, "Φ₂ lifts on at least 3 diagrams");
             return o;
         }},
        {6, "pipeline long exact sequence", 300,
         [&](Report& r) {
             pipeline_suite(r, 10, seed, 3);
             Outcome o = from_report(r);
             long subjects = 0;
             for (const Check& c : r.sections.front().checks)
                 if (c.identity == "H⁰(Tot H) = ker(−α_*, α^*)") subjects += c.total;
             require(o, subjects >= 13, "3 canonical + 10 random instances");
             return o;
         }},
        {7, "appendix constructions", 0,
         [&](Report& r) {
             appendix_suite(r, 3, seed);
             Outcome o = from_report(r);
             require(o, trials_of(r, "appendix", "π₁ : D → L") >= 3, "cone comparison on at least 3 instances");
             return o;
         }},
        {8, "determinism", 0,
         [&](Report& r) {
             Section& s = r.section("determinism");
             const std::string sd = std::to_string(seed);
             for (const std::vector<std::string>& args :
                  {std::vector<std::string>{"report", "--seed", sd, "--trials", "1"},
                   std::vector<std::string>{"report", "--seed", sd, "--trials", "1", "--format", "markdown"},
                   std::vector<std::string>{"gauge", "--seed", sd, "--trials", "3"}}) {
                 std::string cmd;
                 for (const auto& a : args) cmd += (cmd.empty() ? "" : " ") + a;
                 std::ostringstream o1, o2, e1, e2;
                 const int c1 = run_cli(args, o1, e1), c2 = run_cli(args, o2, e2);
                 s.check(cmd, "run 1 bytes = run 2 bytes").record(o1.str() == o2.str() && c1 == c2 && !o1.str().empty());
                 s.check(cmd, "exit code 0").record(c1 == 0, "exit " + std::to_string(c1));
             }
             return from_report(r);
         }},
    };

    bool all = true;
    for (const Criterion& c : criteria) {
        Report rep;
        rep.command = "acceptance criterion " + std::to_string(c.id);
        rep.config["seed"] = seed;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run(rep);
        } catch (const std::exception& e) {
            o.pass = false;
            o.problems.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit > 0 && secs > c.limit) {
            o.pass = false;
            o.problems.push_back("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(static_cast<int>(c.limit)) + " s");
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.1f s", secs);
        std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  (" << o.summary << ", " << timing
                  << (c.limit > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit)) + " s" : std::string()) << ")\n";
        for (const std::string& p : o.problems) std::cout << "    " << p << "\n";
        std::cout.flush();
        if (!report_dir.empty()) std::ofstream(report_dir + "/criterion_" + std::to_string(c.id) + ".md") << rep.markdown();
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
