#include "hallforge/properties.hpp"

#include <sstream>
#include <tuple>

#include "hallforge/finite_type.hpp"
#include "hallforge/io.hpp"

namespace hallforge {

std::vector<PoolQuiver> property_pool() {
    std::vector<PoolQuiver> pool;
    pool.push_back({"L0", Quiver::loop(0, 1, {})});
    pool.push_back({"L1(1,1)", Quiver::loop(1, 1, {1})});
    pool.push_back({"L1(1,-1)", Quiver::loop(1, 1, {-1})});
    pool.push_back({"L1(-1,1)", Quiver::loop(1, -1, {1})});
    pool.push_back({"L2(1,-1)", Quiver::loop(2, 1, {-1, -1})});
    for (int t : {1, -1})
        pool.push_back({"A1~(" + std::to_string(t) + ")",
                        Quiver::build({"1", "2"}, {{"a", 1, 0}, {"b", 0, 1}}, {1, 0}, {0, 1}, {1, 1}, {t, t})});
    pool.push_back({"A2orth", build_typeA(2, "R", DualityType::Orthogonal).quiver});
    pool.push_back({"A2symp", build_typeA(2, "R", DualityType::Symplectic).quiver});
    return pool;
}

DimVec random_selfdual(const Quiver& q, Lcg& rng, int bound) {
    DimVec e(q.num_nodes(), 0);
    for (int i = 0; i < q.num_nodes(); ++i) {
        int j = q.sigma_node(i);
        if (j < i) continue;
        int v = rng.range(0, bound);
        if (j == i && q.s(i) < 0) v -= v % 2;
        e[i] = v;
        e[j] = v;
    }
    return e;
}

namespace {

DimVec random_dim(const Quiver& q, Lcg& rng, int bound) {
    DimVec d(q.num_nodes());
    for (auto& x : d) x = rng.range(0, bound);
    return d;
}

CohaElement random_coha(const Quiver& q, Lcg& rng, int bound, int maxdeg) {
    DimVec d = random_dim(q, rng, bound);
    return {d, random_invariant(rng, coha_blocks(d), rng.range(0, maxdeg))};
}

CohmElement random_cohm(const Quiver& q, Lcg& rng, int bound, int maxdeg) {
    DimVec e = random_selfdual(q, rng, bound);
    return {e, random_invariant(rng, cohm_blocks(q, e), rng.range(0, maxdeg))};
}

std::string show(const Quiver& q, const CohaElement& f) {
    return dim_to_string(f.d) + ":" + poly_to_string(f.poly, variable_names(q, coha_blocks(f.d)));
}

std::string show(const Quiver& q, const CohmElement& g) {
    return dim_to_string(g.e) + ":" + poly_to_string(g.poly, variable_names(q, cohm_blocks(q, g.e)));
}

std::vector<PoolQuiver> filter(const std::vector<PoolQuiver>& pool, bool (*keep)(const Quiver&)) {
    std::vector<PoolQuiver> out;
    for (auto& p : pool)
        if (keep(p.quiver)) out.push_back(p);
    return out;
}

bool sigma_symmetric(const Quiver& q) { return q.has_duality() && q.is_sigma_symmetric(); }
bool with_duality(const Quiver& q) { return q.has_duality(); }
bool supercomm(const Quiver& q) { return q.is_symmetric() && q.supercommutativity_criterion(); }

// Drives one suite: `body` returns an empty string on success, otherwise a
// counterexample description.
template <class Body>
CheckReport run_suite(const std::string& name, const std::vector<PoolQuiver>& pool, uint64_t seed, int instances,
                      Body body) {
    CheckReport rep;
    rep.property = name;
    if (pool.empty()) {
        rep.pass = false;
        rep.detail = "no applicable quiver";
        return rep;
    }
    Lcg rng(seed);
    for (int it = 0; it < instances; ++it) {
        const PoolQuiver& pq = pool[rng.range(0, static_cast<int>(pool.size()) - 1)];
        std::string bad = body(pq.quiver, rng);
        ++rep.instances;
        if (!bad.empty()) {
            rep.pass = false;
            rep.counterexample = pq.name + " " + bad;
            break;
        }
    }
    return rep;
}

int module_twist(const Quiver& q, const DimVec& d, const DimVec& e) {
    return q.euler_form(d, e) - q.euler_form(e, d) + q.sd_euler_form(q.sigma(d)) - q.sd_euler_form(d);
}

}  // namespace

CheckReport check_associativity(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("associativity", pool, seed, instances, [](const Quiver& q, Lcg& rng) -> std::string {
        int b = q.num_nodes() == 1 ? 2 : 1;
        CohaElement f = random_coha(q, rng, b, 2), g = random_coha(q, rng, b, 2), h = random_coha(q, rng, b, 2);
        CohaElement l = shuffle_mul(q, shuffle_mul(q, f, g), h);
        CohaElement r = shuffle_mul(q, f, shuffle_mul(q, g, h));
        if (l == r) return "";
        return "f=" + show(q, f) + " g=" + show(q, g) + " h=" + show(q, h);
    });
}

CheckReport check_supercommutativity(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("supercommutativity", filter(pool, supercomm), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         CohaElement f = random_coha(q, rng, 2, 2), g = random_coha(q, rng, 2, 2);
                         int sign = (coha_weight(q, f) % 2 != 0 && coha_weight(q, g) % 2 != 0) ? -1 : 1;
                         CohaElement fg = shuffle_mul(q, f, g), gf = shuffle_mul(q, g, f);
                         if (fg.poly == gf.poly * Q(sign)) return "";
                         return "f=" + show(q, f) + " g=" + show(q, g);
                     });
}

CheckReport check_module_axiom(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("module-axiom", filter(pool, with_duality), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         CohaElement f = random_coha(q, rng, 1, 2), g = random_coha(q, rng, 1, 2);
                         CohmElement h = random_cohm(q, rng, 2, 2);
                         CohmElement l = cohm_action(q, shuffle_mul(q, f, g), h);
                         CohmElement r = cohm_action(q, f, cohm_action(q, g, h));
                         std::string where = "f=" + show(q, f) + " g=" + show(q, g) + " h=" + show(q, h);
                         if (!(l == r)) return where;
                         if (!is_invariant(cohm_blocks(q, l.e), l.poly)) return "non-invariant output at " + where;
                         return "";
                     });
}

CheckReport check_unit_laws(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("unit-laws", filter(pool, with_duality), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         CohaElement f = random_coha(q, rng, 2, 3);
                         CohmElement g = random_cohm(q, rng, 2, 3);
                         DimVec zero(q.num_nodes(), 0);
                         CohaElement one = CohaElement::unit(zero);
                         if (!(shuffle_mul(q, one, f) == f) || !(shuffle_mul(q, f, one) == f)) return "f=" + show(q, f);
                         if (!(cohm_action(q, one, g) == g)) return "g=" + show(q, g);
                         CohmElement unit_m = CohmElement::unit(q, zero);
                         CohmElement fg = cohm_action(q, f, unit_m);
                         if (fg.e != q.hyperbolic(f.d)) return "f * 1 lands in " + dim_to_string(fg.e);
                         return "";
                     });
}

CheckReport check_s_antihomomorphism(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("s-antihomomorphism", filter(pool, with_duality), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         int b = q.num_nodes() == 1 ? 2 : 1;
                         CohaElement f = random_coha(q, rng, b, 2), g = random_coha(q, rng, b, 2);
                         CohaElement l = s_involution(q, shuffle_mul(q, f, g));
                         CohaElement r = shuffle_mul(q, s_involution(q, g), s_involution(q, f));
                         if (l == r && s_involution(q, s_involution(q, f)) == f) return "";
                         return "f=" + show(q, f) + " g=" + show(q, g);
                     });
}

CheckReport check_module_relations(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("module-relation", filter(pool, sigma_symmetric), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         CohaElement f = random_coha(q, rng, 2, 2);
                         CohmElement g = random_cohm(q, rng, 2, 2);
                         if (check_module_relation(q, f, g).holds) return "";
                         return "f=" + show(q, f) + " g=" + show(q, g);
                     });
}

CheckReport check_parity(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("parity", filter(pool, with_duality), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         CohaElement f = random_coha(q, rng, 2, 2);
                         CohmElement g = random_cohm(q, rng, 2, 2);
                         CohmElement fg = cohm_action(q, f, g);
                         if (fg.is_zero()) return "";
                         std::string where = "f=" + show(q, f) + " g=" + show(q, g);
                         int w = cohm_weight(q, fg);
                         int expect = coha_weight(q, f) + cohm_weight(q, g) - module_twist(q, f.d, g.e);
                         if (w != expect) return "weight " + std::to_string(w) + " != " + std::to_string(expect) + " at " + where;
                         if (sigma_symmetric(q)) {
                             int par = ((q.euler_form(f.d, f.d) + q.sd_euler_form(g.e)) % 2 + 2) % 2;
                             if (((w % 2) + 2) % 2 != par) return "parity at " + where;
                         }
                         return "";
                     });
}

CheckReport check_euler_identities(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("sd-euler-identity", filter(pool, with_duality), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         DimVec d = random_dim(q, rng, 5), dp = random_dim(q, rng, 5), dpp = random_dim(q, rng, 5);
                         DimVec e = random_selfdual(q, rng, 5);
                         std::string where = "d=" + dim_to_string(d) + " d'=" + dim_to_string(dp);
                         if (q.euler_form(add(d, dpp), dp) != q.euler_form(d, dp) + q.euler_form(dpp, dp))
                             return "bilinearity at " + where;
                         if (q.euler_form(d, dp) != q.euler_form(q.sigma(dp), q.sigma(d))) return "sigma symmetry at " + where;
                         if (q.sd_euler_form(add(d, dp)) !=
                             q.sd_euler_form(d) + q.sd_euler_form(dp) + q.euler_form(q.sigma(d), dp))
                             return "E identity at " + where;
                         if (q.hyperbolic(add(d, dp)) != add(q.hyperbolic(d), q.hyperbolic(dp)) ||
                             q.sigma(q.hyperbolic(d)) != q.hyperbolic(d))
                             return "H additivity at " + where;
                         if (sigma_symmetric(q)) {
                             int lhs = q.sd_euler_form(add(q.hyperbolic(d), e));
                             int rhs = q.euler_form(d, d) + q.sd_euler_form(e);
                             if (((lhs - rhs) % 2 + 2) % 2 != 0) return "E parity at " + where + " e=" + dim_to_string(e);
                         }
                         return "";
                     });
}

CheckReport check_witt_preservation(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return run_suite("witt", filter(pool, with_duality), seed, instances,
                     [](const Quiver& q, Lcg& rng) -> std::string {
                         CohaElement f = random_coha(q, rng, 2, 1);
                         CohmElement g = random_cohm(q, rng, 2, 1);
                         CohmElement fg = cohm_action(q, f, g);
                         if (q.witt_class(fg.e) == q.witt_class(g.e)) return "";
                         return "f=" + show(q, f) + " g=" + show(q, g);
                     });
}

namespace {

constexpr int kHilbertMaxdim = 4;
constexpr int kHilbertWindow = 8;

template <class Series, class Draw>
CheckReport hilbert_suite(const std::string& name, const std::vector<PoolQuiver>& pool, uint64_t seed, int instances,
                          Series series, Draw draw) {
    std::map<std::string, QSeries> cache;
    return run_suite(name, pool, seed, instances, [&](const Quiver& q, Lcg& rng) -> std::string {
        std::string key = q.to_json();
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, series(q)).first;
        auto [d, blocks, shift] = draw(q, rng);
        int p = rng.range(0, kHilbertWindow / 2);
        long long dim = static_cast<long long>(weight_basis(blocks, p).size());
        int k = 2 * p + shift;
        Q expect = Q(static_cast<long>(shift % 2 != 0 ? -dim : dim));
        Q got = it->second.coeff(d).at(k);
        if (got == expect) return "";
        return "coefficient at " + dim_to_string(d) + " k=" + std::to_string(k) + " is " + q_to_string(got) +
               ", basis count " + std::to_string(dim);
    });
}

}  // namespace

CheckReport check_hilbert_coha(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return hilbert_suite(
        "hilbert-coha", pool, seed, instances,
        [](const Quiver& q) { return dt_series(q, kHilbertMaxdim, kHilbertWindow); },
        [](const Quiver& q, Lcg& rng) {
            DimVec d(q.num_nodes(), 0);
            int t = rng.range(0, kHilbertMaxdim);
            for (int j = 0; j < t; ++j) ++d[rng.range(0, q.num_nodes() - 1)];
            return std::tuple<DimVec, BlockSpec, int>{d, coha_blocks(d), q.euler_form(d, d)};
        });
}

CheckReport check_hilbert_cohm(const std::vector<PoolQuiver>& pool, uint64_t seed, int instances) {
    return hilbert_suite(
        "hilbert-cohm", filter(pool, with_duality), seed, instances,
        [](const Quiver& q) { return ori_dt_series(q, kHilbertMaxdim, kHilbertWindow); },
        [](const Quiver& q, Lcg& rng) {
            DimVec e;
            do e = random_selfdual(q, rng, kHilbertMaxdim);
            while (total(e) > kHilbertMaxdim);
            return std::tuple<DimVec, BlockSpec, int>{e, cohm_blocks(q, e), q.sd_euler_form(e)};
        });
}

}  // namespace hallforge
