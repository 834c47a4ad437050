#include "doctest.h"
#include "hallforge/cli.hpp"
#include "hallforge/properties.hpp"

using namespace hallforge;

TEST_SUITE("properties") {
    TEST_CASE("every suite passes on the pool") {
        auto pool = property_pool();
        using Suite = CheckReport (*)(const std::vector<PoolQuiver>&, uint64_t, int);
        for (Suite s : {check_associativity, check_supercommutativity, check_module_axiom, check_unit_laws,
                        check_s_antihomomorphism, check_module_relations, check_parity, check_euler_identities,
                        check_witt_preservation, check_hilbert_coha, check_hilbert_cohm}) {
            CheckReport r = s(pool, kDefaultSeed, 200);
            INFO(r.property, ": ", r.counterexample, " ", r.detail);
            CHECK(r.pass);
            CHECK(r.instances >= 200);
        }
    }

    TEST_CASE("random self-dual vectors are admissible") {
        Lcg rng(kDefaultSeed);
        for (const auto& p : property_pool())
            for (int it = 0; it < 200; ++it) CHECK(p.quiver.admissible(random_selfdual(p.quiver, rng, 3)));
    }
}
