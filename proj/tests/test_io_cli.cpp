#include <fstream>

#include "doctest.h"
#include "hallforge/cli.hpp"
#include "hallforge/io.hpp"
#include "hallforge/random.hpp"

using namespace hallforge;

namespace {

std::string data(const std::string& name) { return std::string(HALLFORGE_DATA_DIR) + "/" + name; }

RunConfig config(const std::string& command, const std::string& quiver) {
    RunConfig c;
    c.command = command;
    c.quiver = quiver.empty() ? "" : data(quiver);
    return c;
}

}  // namespace

TEST_SUITE("io_cli") {
    TEST_CASE("polynomial and element json round trips") {
        Quiver q = Quiver::load(data("L2_B.json"));
        Lcg rng(3);
        for (int it = 0; it < 20; ++it) {
            int d = rng.range(1, 3);
            CohaElement f{{d}, random_invariant(rng, coha_blocks({d}), rng.range(0, 4))};
            CHECK(coha_element_from_json(q, coha_element_to_json(q, f)) == f);
            int e = rng.range(0, 4);
            CohmElement g{{e}, random_invariant(rng, cohm_blocks(q, {e}), 2 * rng.range(0, 2))};
            CohmElement back = cohm_element_from_json(q, cohm_element_to_json(q, g));
            CHECK(back.e == g.e);
            CHECK(back.poly == g.poly);
        }
        CHECK(variable_names(q, coha_blocks({2})) == std::vector<std::string>{"x:1:1", "x:1:2"});
        CHECK_THROWS(poly_from_json(R"([{"exp":{"y:1:1":1},"c":"1"}])", {"x:1:1"}));
    }

    TEST_CASE("documents are deterministic") {
        RunConfig c = config("ori-invariants", "L1_tau1.json");
        c.max_dim = 6;
        c.format = "json";
        RunResult a = dispatch(c), b = dispatch(c);
        CHECK(a.status == 0);
        CHECK(a.document == b.document);
        RunConfig p = config("check", "L1_taum1.json");
        p.property = "associativity";
        p.instances = 30;
        CHECK(dispatch(p).document == dispatch(p).document);
    }

    TEST_CASE("exit statuses") {
        CHECK(dispatch(config("dt-invariants", "L0.json")).status == 0);
        CHECK(dispatch(config("dt-invariants", "L0.json")).document == "t^1 : -q^{1/2}\n# maxdim 4 window 20\n");
        CHECK(dispatch(config("dt-invariants", "missing.json")).status == 2);
        CHECK(dispatch(config("dt-invariants", "A2_bad_sign.json")).status == 2);
        RunConfig unknown = config("check", "L0.json");
        unknown.property = "no-such-property";
        CHECK(dispatch(unknown).status == 2);
        RunConfig bad_format = config("dt-series", "L0.json");
        bad_format.format = "xml";
        CHECK(dispatch(bad_format).status == 2);
        RunConfig rel = config("check", "A1tilde.json");
        rel.property = "module-relation";
        rel.instances = 20;
        CHECK(dispatch(rel).status == 0);
        CHECK(dispatch(config("frobnicate", "L0.json")).status == 2);
    }

    TEST_CASE("product and action from files") {
        Quiver q = Quiver::load(data("L1_taum1.json"));
        CohaElement f = coha_element_from_json(q, read_file(data("f_L1.json")));
        CohmElement g = cohm_element_from_json(q, read_file(data("g_L1.json")));
        RunConfig m = config("mul", "L1_taum1.json");
        m.lhs = m.rhs = data("f_L1.json");
        m.format = "json";
        RunResult r = dispatch(m);
        REQUIRE(r.status == 0);
        CHECK(coha_element_from_json(q, r.document) == shuffle_mul(q, f, f));
        RunConfig a = config("act", "L1_taum1.json");
        a.coha = data("f_L1.json");
        a.cohm = data("g_L1.json");
        a.format = "json";
        RunResult s = dispatch(a);
        REQUIRE(s.status == 0);
        CohmElement fg = cohm_element_from_json(q, s.document);
        CohmElement want = cohm_action(q, f, g);
        CHECK(fg.e == want.e);
        CHECK(fg.poly == want.poly);
        m.rhs = data("g_L1.json");
        CHECK(dispatch(m).status == 2);
    }

    TEST_CASE("thom from a multiplicity file") {
        RunConfig t = config("thom", "");
        t.mults = data("thom_A2_symp.json");
        CHECK(dispatch(t).status == 0);
    }
}
