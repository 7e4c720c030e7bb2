#include "defo/cli.hpp"
#include "defo/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace defo;

namespace {

const std::string kData = DEFO_DATA_DIR;

std::string data(const std::string& f) { return kData + "/" + f; }

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

Json run_json(const std::vector<std::string>& args, int expect_code = 0) {
    CliRun r = run(args);
    EXPECT_EQ(r.code, expect_code) << r.err;
    return Json::parse(r.out);
}

const Json* find_check(const Json& rep, const std::string& identity) {
    for (const Json& s : rep["sections"])
        for (const Json& c : s["checks"])
            if (c["identity"] == identity) return &c;
    return nullptr;
}

template <typename F>
std::string input_error_path(F&& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.where;
    }
    return "<no error>";
}

}  // namespace

TEST(Io, Rationals) {
    EXPECT_EQ(rat_from_json(Json(7), "$"), Rat(7));
    EXPECT_EQ(rat_from_json(Json("-3/4"), "$"), Rat(-3, 4));
    EXPECT_EQ(rat_from_json(Json("6/8"), "$"), Rat(3, 4));
    EXPECT_THROW(rat_from_json(Json(0.5), "$"), InputError);
    EXPECT_THROW(rat_from_json(Json("1/0"), "$"), InputError);
    EXPECT_THROW(rat_from_json(Json("abc"), "$"), InputError);
    EXPECT_EQ(rat_to_json(Rat(3)), Json(3));
    EXPECT_EQ(rat_to_json(Rat(-1, 2)), Json("-1/2"));
}

TEST(Io, MatrixShapes) {
    Json m = Json::parse(R"([[1, "1/2"], [0, -1]])");
    Mat x = matrix_from_json(m, 2, 2, "$.m");
    EXPECT_EQ(x(0, 1), Rat(1, 2));
    EXPECT_EQ(matrix_to_json(x), Json::parse(R"([[1, "1/2"], [0, -1]])"));
    EXPECT_EQ(input_error_path([&] { matrix_from_json(m, 3, 2, "$.m"); }), "$.m");
    EXPECT_EQ(input_error_path([&] { matrix_from_json(Json::parse("[[1], [2, 3]]"), 2, 2, "$.m"); }), "$.m[0]");
    EXPECT_EQ(input_error_path([&] { matrix_from_json(Json::parse(R"([[1, "x"]])"), 1, 2, "$.m"); }), "$.m[0][1]");
}

TEST(Io, DglaFileMatchesHandTable) {
    Document d = load_document(data("sl2.dgla.json"));
    ASSERT_EQ(d.schema, "defo.dgla/1");
    DglaPtr l = dgla_from_json(d.body, d.dir, "$");
    ASSERT_EQ(l->size(), 3);
    EXPECT_TRUE(validate_dgla(*l).ok());
    // [h,e] = 2e, [h,f] = −2f, [e,f] = h and antisymmetry.
    auto br = [&](const char* a, const char* b) {
        Vec x = Vec::Zero(3), y = Vec::Zero(3);
        x(l->index_of(a)) = 1;
        y(l->index_of(b)) = 1;
        return l->bracket_vec(x, y);
    };
    auto unit = [&](const char* a, const Rat& c) {
        Vec v = Vec::Zero(3);
        v(l->index_of(a)) = c;
        return v;
    };
    EXPECT_EQ(br("h", "e"), unit("e", 2));
    EXPECT_EQ(br("e", "h"), unit("e", -2));
    EXPECT_EQ(br("h", "f"), unit("f", -2));
    EXPECT_EQ(br("e", "f"), unit("h", 1));
    EXPECT_EQ(br("f", "e"), unit("h", -1));
    EXPECT_TRUE(is_zero(br("h", "h")));

    Document p = load_document(data("line_pair.dgla.json"));
    DglaPtr lp = dgla_from_json(p.body, p.dir, "$");
    EXPECT_TRUE(validate_dgla(*lp).ok());
    // du = a, db = x/2: acyclic.
    EXPECT_EQ(cohomology_dgla(*lp, -1), 0);
    EXPECT_EQ(cohomology_dgla(*lp, 0), 0);
    EXPECT_EQ(cohomology_dgla(*lp, 1), 0);
}

TEST(Io, ScDglaFilesMatchConstructions) {
    Document d = load_document(data("constant_sl2.scdgla.json"));
    ScDgla g = sc_from_json(d.body, d.dir, "$");
    ASSERT_EQ(g.top(), 2);
    EXPECT_TRUE(validate_sc(g).ok());
    ScDgla c = constant_sc(sl2_dgla(), 2);
    for (int i = -1; i <= 2; ++i)
        EXPECT_EQ(cohomology(total_complex(g).complex, i).dim, cohomology(total_complex(c).complex, i).dim) << i;
    // Constant diagram: cohomology of Tot is that of one level.
    EXPECT_EQ(cohomology(total_complex(g).complex, 0).dim, 3);
    EXPECT_EQ(cohomology(total_complex(g).complex, 1).dim, 0);

    Document cv = load_document(data("cover_sl2_dg.scdgla.json"));
    ScDgla gc = sc_from_json(cv.body, cv.dir, "$");
    ScDgla uc = cech_from_cover(uniform_cover(3, 2, sl2_dg_dgla()));
    ASSERT_EQ(gc.levels.size(), uc.levels.size());
    for (size_t i = 0; i < gc.levels.size(); ++i) EXPECT_EQ(gc.levels[i]->size(), uc.levels[i]->size());
    EXPECT_TRUE(check_hypothesis(gc).strong);
}

TEST(Io, SchemaErrorsCarryPaths) {
    EXPECT_EQ(input_error_path([&] {
                  Document d = load_document(data("missing_face.scdgla.json"));
                  sc_from_json(d.body, d.dir, "$");
              }),
              "$.faces[2][2]");
    Json bad = Json::parse(R"({"schema": "defo.dgla/1", "degrees": {"0": ["e"]}, "brackets": [{"i": "e", "j": "q", "value": []}]})");
    EXPECT_EQ(input_error_path([&] { dgla_from_json(bad, ".", "$"); }), "$.brackets[0]");
    Json shape = Json::parse(R"({"schema": "defo.dgla/1", "degrees": {"0": ["a"], "1": ["x"]}, "differential": {"0": [[1, 2]]}})");
    EXPECT_EQ(input_error_path([&] { dgla_from_json(shape, ".", "$"); }), "$.differential.0[0]");
    Json wrong = Json::parse(R"({"schema": "defo.complex/1", "lo": 0, "dims": [1]})");
    EXPECT_EQ(input_error_path([&] { dgla_from_json(wrong, ".", "$"); }), "$.schema");
    EXPECT_EQ(input_error_path([&] { complex_from_json(wrong, "$"); }), "$");
    Json mod = Json::parse(R"({"algebra": "a2", "F": {"representation": {"dims": [1, 1], "arrows": [[[1, 0]]]}}, "G": "S1", "alpha": [[0]]})");
    EXPECT_EQ(input_error_path([&] { pipeline_from_json(mod, "$"); }), "$.F.representation.arrows[0][0]");
    EXPECT_EQ(input_error_path([&] { load_document("builtin:nothing"); }), "builtin:nothing");
    EXPECT_EQ(input_error_path([&] { parse_artin_option("eps2,q"); }), "--artin");
}

TEST(Io, ArtinAndElements) {
    Document a = load_document(data("t3.artin.json"));
    ArtinPtr t3 = artin_from_json(a.body, "$");
    EXPECT_EQ(t3->dim(), 2);
    EXPECT_EQ(t3->nilpotency(), 3);
    auto named = parse_artin_option("eps2,xy2," + data("t3.artin.json"));
    ASSERT_EQ(named.size(), 3u);
    EXPECT_EQ(named[2].first, "t3.artin");
    EXPECT_EQ(named[1].second->dim(), 2);

    Document e = load_document(data("mc_sl2_dg.element.json"));
    ElementInput x = element_from_json(e.body, e.dir, "$");
    EXPECT_TRUE(x.x.homogeneous_of(1));
    EXPECT_TRUE(is_mc(x.x));
    Document n = load_document(data("not_mc.element.json"));
    EXPECT_FALSE(is_mc(element_from_json(n.body, n.dir, "$").x));
}

TEST(Io, PipelineFileMatchesNamedModules) {
    Document d = load_document(data("a2_s2_to_p1.pipeline.json"));
    PipelineInput p = pipeline_from_json(d.body, "$");
    AlgPtr a = a2_algebra();
    EXPECT_EQ(p.f.act, a2_module(a, "S2").act);
    EXPECT_EQ(p.g.act, a2_module(a, "P1").act);
    EXPECT_TRUE(is_module_map(p.f, p.g, p.alpha));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"validate", data("sl2.dgla.json"), data("constant_sl2.scdgla.json"), data("two_term.complex.json"),
                   data("a2_s2_to_p1.pipeline.json"), data("t3.artin.json")})
                  .code,
              0);
    CliRun bad = run({"validate", data("corrupted_bracket.dgla.json")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("Jacobi fails on (e, f, h)"), std::string::npos);
    CliRun missing = run({"validate", data("missing_face.scdgla.json")});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("$.faces[2][2]: missing face map"), std::string::npos);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"gauge", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"gauge", "--trials", "-1"}).code, 2);
    EXPECT_EQ(run({"validate"}).code, 2);
    EXPECT_EQ(run({"validate", data("no_such_file.json")}).code, 2);
    EXPECT_EQ(run({"cohomology", data("a2_zero.pipeline.json")}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"mc", data("mc_sl2_dg.element.json")}).code, 0);
    EXPECT_EQ(run({"mc", data("mc_sl2_dg.element.json"), data("not_mc.element.json")}).code, 1);
}

TEST(Cli, DeterministicReports) {
    for (const char* fmt : {"json", "markdown"}) {
        std::vector<std::string> args = {"gauge", "--seed", "11", "--trials", "3", "--format", fmt};
        CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out) << fmt;
        args[2] = "12";
        EXPECT_NE(run(args).out, a.out) << fmt;
    }
    std::vector<std::string> d = {"descent", "builtin:scaled_sl2_dg", "--seed", "3", "--trials", "1"};
    EXPECT_EQ(run(d).out, run(d).out);
}

TEST(Cli, ReportsEmbedIdentities) {
    Json rep = run_json({"gauge", "--trials", "2", "--artin", "t3"});
    EXPECT_EQ(rep["schema"], "defo.report/1");
    EXPECT_EQ(rep["verdict"], "pass");
    for (const char* id : {"d(e^a*x) + ½[e^a*x, e^a*x] = 0", "e^a*(e^b*x) = e^{a•b}*x", "e^a*x = x ⇔ da + [x,a] = 0", "e^{du+[x,u]}*x = x",
                           "(−a)•b ∈ {du + [x,u]} ⇔ e^{at}*x and e^{bt}*x are 2-homotopic"}) {
        const Json* c = find_check(rep, id);
        ASSERT_NE(c, nullptr) << id;
        EXPECT_EQ((*c)["verdict"], "pass");
        EXPECT_EQ((*c)["passed"], (*c)["total"]);
    }
    CliRun md = run({"gauge", "--trials", "1", "--artin", "eps2", "--format", "markdown"});
    EXPECT_NE(md.out.find("| abelian ⊗ m_eps2 | `e^a*(e^b*x) = e^{a•b}*x` | 1/1 | pass |"), std::string::npos);
}

TEST(Cli, DescentHypothesisAndCounterexample) {
    Json h = run_json({"descent", "builtin:counterexample", "builtin:uniform_abelian", "--trials", "0"});
    ASSERT_EQ(h["sections"].size(), 1u);
    EXPECT_EQ(h["sections"][0]["name"], "hypothesis");
    EXPECT_EQ(h["sections"][0]["data"]["builtin:counterexample"]["strong"], false);
    EXPECT_EQ(h["sections"][0]["data"]["builtin:counterexample"]["negative cohomology"]["H^-1(g_2)"], 1);
    EXPECT_EQ(h["sections"][0]["data"]["builtin:uniform_abelian"]["strong"], true);

    Json c = run_json({"descent", "builtin:counterexample", "--trials", "1"});
    const Json* pi0 = find_check(c, "π₀ comparison reports failure");
    ASSERT_NE(pi0, nullptr);
    EXPECT_EQ((*pi0)["verdict"], "pass");
    EXPECT_NE(find_check(c, "descent refuses outside the vanishing hypotheses"), nullptr);

    Json s = run_json({"descent", data("cover_sl2_dg.scdgla.json"), "--trials", "1", "--artin", "eps2"});
    EXPECT_EQ(s["verdict"], "pass");
    EXPECT_NE(find_check(s, "Φ₂(lift(l, m, u)) = (l, m)"), nullptr);
    EXPECT_NE(find_check(s, "H¹(Tot g) ⊗ m_A ≅ π₀ Tot(Del) over square-zero A"), nullptr);
}

TEST(Cli, PipelineGoldens) {
    Json def = run_json({"pipeline"});
    const Json& stp = def["sections"][0]["data"]["builtin:simple_to_projective"];
    EXPECT_EQ(stp["H^i(Tot H)"][0], 1);
    EXPECT_EQ(stp["tangent dim H^1"], 0);

    Json z = run_json({"pipeline", "builtin:zero", "builtin:identity", data("a2_zero.pipeline.json")});
    const Json& data0 = z["sections"][0]["data"];
    EXPECT_EQ(data0["builtin:zero"]["H^i(Tot H)"][0], 2);  // End S1 ⊕ End S2
    EXPECT_EQ(data0["builtin:zero"]["obstruction dim H^2"], 1);
    EXPECT_EQ(data0["builtin:identity"]["H^i(Tot H)"][0], 1);
    EXPECT_EQ(data0[data("a2_zero.pipeline.json")], data0["builtin:zero"]);
    EXPECT_NE(find_check(z, "im = ker at Ext^i(F,G)"), nullptr);
}
