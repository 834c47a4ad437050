// Acceptance run: one line per criterion, exit status 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hallforge/finite_type.hpp"
#include "hallforge/io.hpp"
#include "hallforge/properties.hpp"

using namespace hallforge;

namespace {

// Exact arithmetic throughout: coefficients must agree with zero tolerance.
constexpr int kTolerance = 0;
constexpr double kMaxSecondsL2 = 30.0;
constexpr double kMaxSecondsL2B = 600.0;
constexpr int kWindow = 40;
constexpr uint64_t kSeed = 20261016;
constexpr int kInstances = 200;

// Laurent polynomial from (key, coefficient) pairs, keys in q^{1/2}.
Laurent lp(std::initializer_list<std::pair<int, long>> terms) {
    Laurent l;
    for (auto& [k, c] : terms) l.add_term(k, Q(c));
    return l;
}

// (-q^{1/2})^k
Laurent mq(int k) { return Laurent::monomial(k, Q(k % 2 == 0 ? 1 : -1)); }

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void fail(const std::string& s) {
        pass = false;
        notes.push_back(s);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

// got must be exact on every key of want and agree with it up to got.prec.
bool same(const Laurent& got, const Laurent& want, std::string& why) {
    int top = want.c.empty() ? 0 : want.c.rbegin()->first;
    if (got.prec < top) {
        why = "precision " + std::to_string(got.prec) + " below key " + std::to_string(top);
        return false;
    }
    std::map<int, Q> diff;
    for (auto& [k, a] : got.c)
        if (k <= got.prec) diff[k] += a;
    for (auto& [k, a] : want.c) diff[k] -= a;
    for (auto& [k, a] : diff)
        if (abs(a) > kTolerance) {
            why = "got " + laurent_to_string(got) + ", expected " + laurent_to_string(want);
            return false;
        }
    return true;
}

void expect_coeff(Outcome& o, const std::string& label, const Laurent& got, const Laurent& want) {
    std::string why;
    if (!same(got, want, why)) o.fail(label + ": " + why);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 ----
Outcome criterion1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Quiver q = Quiver::loop(2, 1, {-1, -1});
    QSeries om = dt_invariants(q, 4, kWindow).to_series(SeriesKind::Torus, kWindow);
    double dt = seconds_since(t0);
    expect_coeff(o, "t^1", om.coeff({1}), lp({{-1, -1}}));
    expect_coeff(o, "t^2", om.coeff({2}), lp({{-4, 1}}));
    expect_coeff(o, "t^3", om.coeff({3}), lp({{-9, -1}}));
    expect_coeff(o, "t^4", om.coeff({4}), lp({{-16, 1}, {-12, 1}}));
    if (dt > kMaxSecondsL2) o.fail("runtime " + std::to_string(dt) + "s");
    return o;
}

// ---- 2 ----
Outcome criterion2() {
    Outcome o;
    Quiver q = Quiver::loop(2, 1, {-1, -1});
    SignedTable loop = equivariant_dt_loop(q, {1}, 8, kWindow);
    CohaQuotients cq(q);
    SignedTable trace = equivariant_dt_trace(cq, {1}, 8, kWindow);
    if (loop.plus.mult != trace.plus.mult || loop.minus.mult != trace.minus.mult)
        o.fail("loop parity route and S_H trace route differ");
    QSeries plus = loop.plus.to_series(SeriesKind::Module, kWindow);
    QSeries minus = loop.minus.to_series(SeriesKind::Module, kWindow);
    std::map<int, Laurent> want_plus = {{2, {}}, {4, {}}, {6, lp({{-9, -1}})}, {8, lp({{-16, 1}, {-12, 1}})}};
    std::map<int, Laurent> want_minus = {{2, lp({{-1, -1}})}, {4, lp({{-4, 1}})}, {6, {}}, {8, {}}};
    for (auto& [e, w] : want_plus) expect_coeff(o, "plus xi^" + std::to_string(e), plus.coeff({e}), w);
    for (auto& [e, w] : want_minus) expect_coeff(o, "minus xi^" + std::to_string(e), minus.coeff({e}), w);
    return o;
}

// ---- 3 ----
Outcome criterion3() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Quiver q = Quiver::loop(2, 1, {-1, -1});
    LoopFactorization lf = loop_factorization(q, 9, kWindow);
    double dt = seconds_since(t0);
    if (!lf.consistent) o.fail("quotient and division routes differ: " + lf.detail);
    std::map<int, Laurent> want = {
        {1, lp({{0, 1}})},
        {3, lp({{-3, -1}})},
        {5, lp({{-10, 1}, {-6, 1}})},
        {7, lp({{-21, -1}, {-17, -1}, {-13, -2}, {-9, -1}})},
        {9, lp({{-36, 1}, {-32, 1}, {-28, 2}, {-24, 3}, {-20, 4}, {-16, 3}, {-12, 1}})},
    };
    for (auto& [e, w] : want) {
        expect_coeff(o, "division xi^" + std::to_string(e), lf.omega.coeff({e}), w);
        expect_coeff(o, "quotient xi^" + std::to_string(e), lf.quotient_omega.coeff({e}), w);
    }
    if (dt > kMaxSecondsL2B) o.fail("runtime " + std::to_string(dt) + "s");
    return o;
}

// ---- 4 ----
Outcome criterion4() {
    Outcome o;
    constexpr int w = 80;
    Quiver q = Quiver::loop(3, 1, {1, 1, 1});
    QSeries om = dt_invariants(q, 4, w).to_series(SeriesKind::Torus, w);
    expect_coeff(o, "t^1", om.coeff({1}), lp({{-2, 1}}));
    expect_coeff(o, "t^2", om.coeff({2}), lp({{-8, 1}}));
    expect_coeff(o, "t^3", om.coeff({3}), lp({{-18, 1}, {-14, 1}, {-12, 1}}));
    expect_coeff(o, "t^4", om.coeff({4}),
                 lp({{-32, 1}, {-28, 1}, {-26, 1}, {-24, 2}, {-22, 1}, {-20, 2}, {-18, 1}, {-16, 1}}));
    LoopFactorization lf = loop_factorization(q, 8, w);
    if (!lf.consistent) o.fail("quotient and division routes differ: " + lf.detail);
    auto poly = [](int shift, std::vector<std::pair<int, long>> qpow) {
        Laurent l;
        for (auto& [p, c] : qpow) l.add_term(2 * (shift + p), Q(c));
        return l;
    };
    std::map<int, Laurent> want = {
        {0, lp({{0, 1}})},
        {2, poly(-4, {{0, 1}, {2, 1}})},
        {4, poly(-12, {{0, 1}, {2, 1}, {4, 2}, {6, 2}, {8, 1}})},
        {6, poly(-24, {{0, 1}, {2, 1}, {4, 2}, {6, 3}, {8, 4}, {10, 5}, {12, 6}, {16, 4}, {18, 1}})},
        {8, poly(-40, {{0, 1}, {2, 1}, {4, 2}, {6, 3}, {8, 5}, {10, 6}, {12, 9}, {14, 11}, {16, 14}, {18, 16},
                       {20, 19}, {22, 20}, {24, 21}, {26, 19}, {28, 14}, {30, 6}, {32, 1}})},
    };
    for (auto& [e, wl] : want) expect_coeff(o, "D xi^" + std::to_string(e), lf.omega.coeff({e}), wl);
    if (!o.pass) o.note("see decisions ledger: printed xi^6 coefficient lacks the 6q^{14} term both routes produce");
    return o;
}

// ---- 5 ----
Outcome criterion5() {
    Outcome o;
    for (int m = 2; m <= 6; ++m) {
        std::string tag = "m=" + std::to_string(m) + " ";
        std::vector<int> tau(m, -1);
        QSeries om = dt_invariants(Quiver::loop(m, 1, tau), 2, kWindow).to_series(SeriesKind::Torus, kWindow);
        expect_coeff(o, tag + "t^1", om.coeff({1}), mq(1 - m));
        expect_coeff(o, tag + "t^2", om.coeff({2}), quantum_integer(m / 2, 2).shifted(4 * (1 - m)));
        LoopFactorization ld = loop_factorization(Quiver::loop(m, 1, tau), 4, kWindow);
        Laurent d4 = (quantum_integer(2 * (m / 4) + 1, 2) * quantum_integer((m + 2) / 4, 4)).shifted(6 * (1 - m));
        expect_coeff(o, tag + "D xi^4", ld.omega.coeff({4}), d4);
        LoopFactorization lc = loop_factorization(Quiver::loop(m, -1, tau), 2, kWindow);
        Laurent c2 = quantum_integer(m / 2, 2) * mq(3 * (1 - m));
        expect_coeff(o, tag + "C xi^2", lc.omega.coeff({2}), c2);
        if (!ld.consistent || !lc.consistent) o.fail(tag + "routes differ");
    }
    return o;
}

// ---- 6 ----
// Expansion of c xi^a / (1 - q^{-1} xi^2) through xi^maxe.
QSeries geometric_xi(int a, const Laurent& c, int maxe) {
    QSeries s(SeriesKind::Module, 1, maxe, kWindow);
    for (int j = 0; a + 2 * j <= maxe; ++j) s.add({a + 2 * j}, c.shifted(-2 * j));
    return s;
}

QSeries xi_poly(std::vector<int> powers, int maxe) {
    QSeries s(SeriesKind::Module, 1, maxe, kWindow);
    for (int e : powers) s.add({e}, Laurent::monomial(0));
    return s;
}

void expect_series(Outcome& o, const std::string& label, const QSeries& got, const QSeries& want, int maxe) {
    for (int e = 0; e <= maxe; ++e) expect_coeff(o, label + " xi^" + std::to_string(e), got.coeff({e}), want.coeff({e}));
}

Outcome criterion6() {
    Outcome o;
    constexpr int maxe = 8;
    struct Case {
        std::string name;
        int m, s, tau;
        QSeries want;
    };
    std::vector<Case> cases = {
        {"L0 B+D", 0, 1, 0, xi_poly({0, 1}, maxe)},
        {"L0 C", 0, -1, 0, xi_poly({0}, maxe)},
        {"L1 tau=1 B+D", 1, 1, 1,
         series_add(geometric_xi(1, Laurent::monomial(-1), maxe), geometric_xi(0, Laurent::monomial(0), maxe))},
        {"L1 tau=1 C", 1, -1, 1, xi_poly({0}, maxe)},
        {"L1 tau=-1 B+D", 1, 1, -1, xi_poly({0, 1}, maxe)},
        {"L1 tau=-1 C", 1, -1, -1, xi_poly({0}, maxe)},
    };
    for (auto& c : cases) {
        Quiver q = c.m == 0 ? Quiver::loop(0, c.s, {}) : Quiver::loop(1, c.s, {c.tau});
        LoopFactorization lf = loop_factorization(q, maxe, kWindow);
        if (!lf.consistent) o.fail(c.name + ": routes differ");
        Outcome sub;
        expect_series(sub, c.name, lf.omega, c.want, maxe);
        if (!sub.pass) {
            o.fail(sub.notes.front());
            QSeries alt = series_add(geometric_xi(1, mq(-1), maxe), geometric_xi(0, Laurent::monomial(0), maxe));
            Outcome chk;
            expect_series(chk, c.name, lf.omega, alt, maxe);
            if (chk.pass) o.note(c.name + " equals -q^{-1/2}xi/(1-q^{-1}xi^2) + 1/(1-q^{-1}xi^2); see decisions ledger");
        }
    }
    return o;
}

// ---- 7 ----
Outcome criterion7() {
    Outcome o;
    for (int t : {-1, 1}) {
        Quiver q = Quiver::build({"1", "2"}, {{"a", 1, 0}, {"b", 0, 1}}, {1, 0}, {0, 1}, {1, 1}, {t, t});
        QSeries om = ori_dt_invariants(q, 8, kWindow).series(kWindow);
        bool ok = true;
        for (int k = 0; k <= 4; ++k) {
            Laurent want = t == 1 ? Laurent::monomial(-k) : (k == 0 ? Laurent::monomial(0) : Laurent{});
            std::string why;
            if (!same(om.coeff({k, k}), want, why)) {
                o.fail("tau=" + std::to_string(t) + " xi^(" + std::to_string(k) + "," + std::to_string(k) + "): " + why);
                ok = false;
            }
        }
        if (!ok && t == 1) {
            bool alt = true;
            std::string why;
            for (int k = 0; k <= 4; ++k) alt = alt && same(om.coeff({k, k}), mq(-k), why);
            if (alt) o.note("tau=1 equals 1/(1+q^{-1/2}xi^(1,1)); see decisions ledger");
        }
    }
    return o;
}

// ---- 8 ----
Outcome criterion8() {
    Outcome o;
    for (auto dt : {DualityType::Orthogonal, DualityType::Symplectic}) {
        bool orth = dt == DualityType::Orthogonal;
        RootSystemA rs = build_typeA(2, "R", dt);
        const Quiver& q = rs.quiver;
        for (int d = 0; d <= 3; ++d)
            for (int e = 0; e <= 2; ++e) {
                CohmElement g = cohm_action(q, CohaElement::unit({d, 0}), CohmElement::unit(q, {e, e}));
                int n = d + e;
                int nv = block_nvars(cohm_blocks(q, {n, n}));
                Partition lam;
                for (int j = orth ? d - 1 : d; j >= 1; --j) lam.push_back(j);
                int size = 0;
                for (int x : lam) size += x;
                Poly want = schur(lam, var_range(0, n), nv) * Q(size % 2 ? -1 : 1);
                if (!orth) want = want * Q(1 << d);
                if (g.poly != want)
                    o.fail(std::string(orth ? "orth" : "symp") + " d=" + std::to_string(d) + " e=" + std::to_string(e) +
                           ": got " + (g.is_zero() ? "0" : std::to_string(g.poly.size()) + " terms"));
            }
    }
    if (!o.pass) o.note("odd e orthogonal cells vanish; see decisions ledger");
    return o;
}

// ---- 9 ----
Outcome criterion9() {
    Outcome o;
    struct Case {
        int n;
        std::string orient;
    };
    for (auto c : {Case{1, ""}, Case{2, "R"}, Case{3, "RR"}, Case{4, "RLR"}})
        for (auto dt : {DualityType::Orthogonal, DualityType::Symplectic}) {
            RootSystemA rs = build_typeA(c.n, c.orient, dt);
            DilogReport r = dilog_identity_check(rs, 6, kWindow);
            if (!r.equal)
                o.fail("A" + std::to_string(c.n) + " " + c.orient + (dt == DualityType::Orthogonal ? " orth: " : " symp: ") +
                       r.detail);
        }
    o.note("non-equioriented case is A4 RLR; A3 has no non-equioriented orientation compatible with the involution");
    return o;
}

// ---- 10 ----
Outcome criterion10() {
    Outcome o;
    auto run = [&](const std::string& label, const PbwReport& r) {
        if (!r.pass) o.fail(label + ": " + r.counterexample);
    };
    RootSystemA a2 = build_typeA(2, "R", DualityType::Orthogonal);
    RootSystemA a3 = build_typeA(3, "RR", DualityType::Orthogonal);
    RootSystemA a2s = build_typeA(2, "R", DualityType::Symplectic);
    run("CoHA A2", pbw_check_coha(a2, {3, 3}));
    run("CoHA A3", pbw_check_coha(a3, {3, 3}));
    run("CoHM A2 orth", pbw_check_cohm(a2, {3, 3}));
    run("CoHM A2 symp", pbw_check_cohm(a2s, {2, 3}));
    return o;
}

// ---- 11 ----
Outcome criterion11() {
    Outcome o;
    auto pool = property_pool();
    using Suite = CheckReport (*)(const std::vector<PoolQuiver>&, uint64_t, int);
    for (Suite s : {check_associativity, check_module_axiom, check_unit_laws, check_s_antihomomorphism,
                    check_module_relations, check_parity, check_euler_identities, check_witt_preservation,
                    check_hilbert_coha, check_hilbert_cohm}) {
        CheckReport r = s(pool, kSeed, kInstances);
        if (!r.pass || r.instances < kInstances) o.fail(r.property + ": " + r.counterexample + r.detail);
    }
    for (auto& [name, base] : std::vector<std::pair<std::string, Quiver>>{
             {"L1", Quiver::plain({"1"}, {{"a", 0, 0}})}, {"A2", Quiver::plain({"1", "2"}, {{"a", 0, 1}})}}) {
        CheckReport r = check_disjoint_union(base, 4, kSeed, kInstances);
        if (!r.pass || r.instances < kInstances) o.fail("disjoint " + name + ": " + r.counterexample);
    }
    return o;
}

// ---- 12 ----
std::vector<Partition> strict_partitions(int maxsum) {
    std::vector<Partition> out;
    std::function<void(Partition, int)> rec = [&](Partition p, int rem) {
        if (!p.empty()) out.push_back(p);
        int hi = p.empty() ? rem : std::min(rem, p.back() - 1);
        for (int v = hi; v >= 0; --v) {
            Partition n = p;
            n.push_back(v);
            rec(n, rem - v);
        }
    };
    rec({}, maxsum);
    return out;
}

std::vector<Partition> weak_partitions(int maxsum, int maxlen) {
    std::vector<Partition> out;
    std::function<void(Partition, int)> rec = [&](Partition p, int rem) {
        if (!p.empty()) out.push_back(p);
        if (static_cast<int>(p.size()) == maxlen) return;
        int hi = p.empty() ? rem : std::min(rem, p.back());
        for (int v = hi; v >= 0; --v) {
            Partition n = p;
            n.push_back(v);
            rec(n, rem - v);
        }
    };
    rec({}, maxsum);
    return out;
}

CohaElement ordered_product(const Quiver& q, const Partition& exps) {
    CohaElement prod = CohaElement::unit({0});
    for (int a : exps) prod = shuffle_mul(q, prod, CohaElement{{1}, Poly::variable(1, 0).pow(a)});
    return prod;
}

Outcome criterion12() {
    Outcome o;
    Quiver l0 = Quiver::loop(0, 1, {});
    int action_sign_failures = 0;
    for (auto& i : strict_partitions(6)) {
        int d = static_cast<int>(i.size());
        Partition rev(i.rbegin(), i.rend());
        Partition lam(d);
        for (int k = 0; k < d; ++k) lam[k] = i[k] - (d - 1 - k);
        Poly s = schur(trim(lam), var_range(0, d), d);
        std::string tag = "i=" + dim_to_string(i);
        if (ordered_product(l0, rev).poly != s) o.fail("L0 product " + tag);
        bool odd = true, even = true;
        for (int v : i) (v % 2 ? even : odd) = false;
        if (!odd && !even) continue;
        Partition mu(d);
        for (int k = 0; k < d; ++k) mu[k] = (odd ? (i[k] - 1) / 2 : i[k] / 2) - (d - 1 - k);
        Poly want = schur(trim(mu), var_range(0, d), d).inflate(2) * Q((odd && d % 2 ? -1 : 1) * (1 << d));
        CohmElement g = cohm_action(l0, {{d}, s}, CohmElement::unit(l0, {odd ? 1 : 0}));
        if (g.poly != want) {
            ++action_sign_failures;
            o.fail(std::string(odd ? "B" : "D") + " action " + tag + (g.poly == want * Q(-1) ? ": opposite sign" : ": differs"));
        }
    }
    Quiver l1 = Quiver::loop(1, 1, {-1});
    for (auto& i : weak_partitions(6, 6)) {
        std::map<int, int> mult;
        for (int v : i) ++mult[v];
        long n = 1;
        for (auto& [v, c] : mult)
            for (int j = 2; j <= c; ++j) n *= j;
        int d = static_cast<int>(i.size());
        if (ordered_product(l1, i).poly != monomial_sym(trim(i), var_range(0, d), d) * Q(n))
            o.fail("L1 product i=" + dim_to_string(i));
    }
    if (action_sign_failures > 0)
        o.note("action identities differ from the explicit action formula by (-1)^{d(d-1)/2}; see decisions ledger");
    return o;
}

}  // namespace

int main() {
    struct Item {
        int id;
        const char* what;
        std::function<Outcome()> run;
    };
    std::vector<Item> items = {
        {1, "Omega_{L2} through t^4", criterion1},
        {2, "equivariant Omega~^{+-}_{L2} xi^2..xi^8", criterion2},
        {3, "Omega^B_{L2} through xi^9, both routes", criterion3},
        {4, "Omega_{L3} through t^4 and Omega^D_{L3} through xi^8", criterion4},
        {5, "loop quivers m=2..6 leading terms", criterion5},
        {6, "L0/L1 closed forms through xi^8", criterion6},
        {7, "affine A1 through xi^(4,4)", criterion7},
        {8, "A2 Thom polynomials d<=3, e<=2", criterion8},
        {9, "ordered dilogarithm identity, total dimension <= 6", criterion9},
        {10, "PBW isomorphisms", criterion10},
        {11, "property suites, 200 instances each", criterion11},
        {12, "L0 Schur / L1 monomial identities", criterion12},
    };
    int failed = 0;
    for (auto& it : items) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it.run();
        } catch (const std::exception& ex) {
            o.fail(std::string("exception: ") + ex.what());
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1fs", seconds_since(t0));
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << it.id << " " << it.what << " (" << buf << ")";
        if (!o.notes.empty()) {
            std::cout << " -- " << o.notes.front();
            for (size_t k = 1; k < o.notes.size() && k < 4; ++k) std::cout << "; " << o.notes[k];
            if (o.notes.size() > 4) std::cout << "; +" << o.notes.size() - 4 << " more";
        }
        std::cout << std::endl;
        if (!o.pass) ++failed;
    }
    std::cout << (12 - failed) << "/12 criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
