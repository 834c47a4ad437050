#include "hallforge/cohm.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hallforge/random.hpp"
#include "json.hpp"

namespace hallforge {

using json = nlohmann::json;

namespace {

std::string dims_key(const DimVec& d) {
    std::string s;
    for (int x : d) s += std::to_string(x) + ",";
    return s;
}

void require_duality(const Quiver& q) {
    if (!q.has_duality()) throw QuiverError(QuiverError::Code::NoDuality, "quiver has no duality structure");
}

void require_sigma_symmetric(const Quiver& q) {
    require_duality(q);
    if (!q.is_sigma_symmetric())
        throw QuiverError(QuiverError::Code::NotSymmetric, "operation needs a sigma-symmetric quiver");
}

// Variable offsets of the module layout; -1 for Q0^- nodes.
std::vector<int> cohm_offsets(const Quiver& q, const DimVec& e) {
    std::vector<int> off(q.num_nodes(), -1);
    int o = 0;
    for (int i = 0; i < q.num_nodes(); ++i) {
        switch (q.node_class(i)) {
            case NodeClass::Plus:
                off[i] = o;
                o += e[i];
                break;
            case NodeClass::Fixed:
                off[i] = o;
                o += e[i] / 2;
                break;
            case NodeClass::Minus:
                break;
        }
    }
    return off;
}

std::vector<int> coha_offsets(const DimVec& d) {
    std::vector<int> off(d.size(), 0);
    for (size_t i = 1; i < d.size(); ++i) off[i] = off[i - 1] + d[i - 1];
    return off;
}

int block_total(const BlockSpec& b) { return block_nvars(b); }

}  // namespace

BlockSpec cohm_blocks(const Quiver& q, const DimVec& e) {
    require_duality(q);
    BlockSpec b;
    auto off = cohm_offsets(q, e);
    for (int i = 0; i < q.num_nodes(); ++i) {
        if (q.node_class(i) == NodeClass::Plus) b.push_back({i, false, off[i], e[i]});
        if (q.node_class(i) == NodeClass::Fixed) b.push_back({i, true, off[i], e[i] / 2});
    }
    return b;
}

CohmElement CohmElement::unit(const Quiver& q, const DimVec& e) {
    q.require_admissible(e);
    return {e, Poly::constant(block_total(cohm_blocks(q, e)), 1)};
}

CohmElement CohmElement::make(const Quiver& q, const DimVec& e, Poly p) {
    q.require_admissible(e);
    BlockSpec b = cohm_blocks(q, e);
    if (p.nvars() != block_total(b)) throw std::invalid_argument("CoHM element has the wrong variable count");
    if (p.has_negative_exponent()) throw std::invalid_argument("CoHM element is not a polynomial");
    if (!is_invariant(b, p)) throw std::invalid_argument("CoHM element is not Weyl invariant");
    return {e, std::move(p)};
}

int cohm_weight(const Quiver& q, const CohmElement& g) {
    int deg = g.poly.is_zero() ? 0 : g.poly.degree();
    return 2 * deg + q.sd_euler_form(g.e);
}

BcdType bcd_type(int s, int rank) {
    if (s < 0) return BcdType::C;
    return rank % 2 ? BcdType::B : BcdType::D;
}

std::shared_ptr<const KernelPlan> cohm_plan(const Quiver& q, const DimVec& d, const DimVec& e) {
    std::string key = "cohm|" + q.to_json() + "|" + dims_key(d) + "|" + dims_key(e);
    return cached_plan(key, [&] {
        const int n = q.num_nodes();
        DimVec E = add(q.hyperbolic(d), e);
        q.require_admissible(E);
        auto offE = cohm_offsets(q, E), offe = cohm_offsets(q, e);
        auto offd = coha_offsets(d);
        const int nvars = block_total(cohm_blocks(q, E));
        const int ng = block_total(cohm_blocks(q, e));

        // shuffled nodes: Q0^+ gets (d_i, e_i, d_sigma(i)), fixed nodes (d_i, e_i/2)
        std::vector<int> snodes;
        std::vector<std::vector<int>> sizes;
        std::vector<int> slot(n, -1);
        int flips = 0;
        for (int i = 0; i < n; ++i) {
            if (q.node_class(i) == NodeClass::Plus) {
                slot[i] = static_cast<int>(sizes.size());
                sizes.push_back({d[i], e[i], d[q.sigma_node(i)]});
            } else if (q.node_class(i) == NodeClass::Fixed) {
                slot[i] = static_cast<int>(sizes.size());
                sizes.push_back({d[i], e[i] / 2});
                flips += d[i];
            }
        }
        std::vector<int> flip_base(n, 0);
        {
            int b = 0;
            for (int i = 0; i < n; ++i)
                if (q.node_class(i) == NodeClass::Fixed) {
                    flip_base[i] = b;
                    b += d[i];
                }
        }
        std::vector<KernelTerm> terms;
        for_each_shuffle_tuple(sizes, [&](const std::vector<Shuffle>& sh) {
            for (long mask = 0; mask < (1L << flips); ++mask) {
                auto X = [&](int i, int a) -> SVar {
                    switch (q.node_class(i)) {
                        case NodeClass::Plus:
                            return {offE[i] + sh[slot[i]][0][a], 1};
                        case NodeClass::Minus: {
                            int j = q.sigma_node(i);
                            return {offE[j] + sh[slot[j]][2][a], -1};
                        }
                        default:
                            return {offE[i] + sh[slot[i]][0][a], (mask >> (flip_base[i] + a)) & 1 ? -1 : 1};
                    }
                };
                auto Z = [&](int i, int k) -> SVar {
                    if (q.node_class(i) == NodeClass::Minus) {
                        int j = q.sigma_node(i);
                        return {offE[j] + sh[slot[j]][1][k], -1};
                    }
                    return {offE[i] + sh[slot[i]][1][k], 1};
                };
                // number of z'' variables at node i
                auto zc = [&](int i) { return q.node_class(i) == NodeClass::Fixed ? e[i] / 2 : e[i]; };
                auto fixed = [&](int i) { return q.node_class(i) == NodeClass::Fixed; };

                KernelTerm t;
                t.map_f.resize(total(d));
                t.map_g.resize(ng);
                for (int i = 0; i < n; ++i) {
                    for (int a = 0; a < d[i]; ++a) {
                        SVar x = X(i, a);
                        t.map_f[offd[i] + a] = {x.var, x.sign};
                    }
                    if (q.node_class(i) != NodeClass::Minus)
                        for (int k = 0; k < zc(i); ++k) {
                            SVar z = Z(i, k);
                            t.map_g[offe[i] + k] = {z.var, z.sign};
                        }
                }
                auto square_diff = [&](std::vector<LinForm>& out, SVar x, SVar z) {
                    out.push_back(lin(x, 1, z, -1));
                    out.push_back(lin(x, 1, z, 1));
                };
                // denominators
                for (int i = 0; i < n; ++i) {
                    if (q.node_class(i) == NodeClass::Plus) {
                        int si = q.sigma_node(i);
                        for (int k = 0; k < e[i]; ++k)
                            for (int l = 0; l < d[i]; ++l) t.den.push_back(lin(Z(i, k), 1, X(i, l), -1));
                        for (int m = 0; m < d[si]; ++m)
                            for (int l = 0; l < d[i]; ++l) t.den.push_back(lin(X(si, m), -1, X(i, l), -1));
                        for (int m = 0; m < d[si]; ++m)
                            for (int k = 0; k < e[i]; ++k) t.den.push_back(lin(X(si, m), -1, Z(i, k), -1));
                    } else if (q.node_class(i) == NodeClass::Fixed) {
                        BcdType ty = bcd_type(q.s(i), 2 * d[i] + e[i]);
                        if (ty != BcdType::D) {
                            int base = ty == BcdType::B ? -1 : -2;
                            for (int l = 0; l < d[i]; ++l) {
                                t.scalar /= base;
                                t.den.push_back(lin(X(i, l), 1));
                            }
                        }
                        for (int k = 0; k < d[i]; ++k)
                            for (int l = k + 1; l < d[i]; ++l) t.den.push_back(lin(X(i, k), -1, X(i, l), -1));
                        for (int l = 0; l < d[i]; ++l)
                            for (int k = 0; k < e[i] / 2; ++k) square_diff(t.den, X(i, l), Z(i, k));
                    }
                }
                // numerators
                for (int a = 0; a < q.num_arrows(); ++a) {
                    const Arrow& ar = q.arrows()[a];
                    if (q.arrow_class(a) == NodeClass::Plus) {
                        int i = ar.tail, j = ar.head, sj = q.sigma_node(j);
                        for (int m = 0; m < d[sj]; ++m)
                            for (int l = 0; l < d[i]; ++l) t.num.push_back(lin(X(sj, m), -1, X(i, l), -1));
                        if (!fixed(i)) {
                            for (int m = 0; m < d[sj]; ++m)
                                for (int k = 0; k < e[i]; ++k) t.num.push_back(lin(X(sj, m), -1, Z(i, k), -1));
                        } else {
                            for (int m = 0; m < d[sj]; ++m)
                                for (int k = 0; k < e[i] / 2; ++k) square_diff(t.num, X(sj, m), Z(i, k));
                            if (e[i] % 2)
                                for (int m = 0; m < d[sj]; ++m) t.num.push_back(lin(X(sj, m), -1));
                        }
                        if (!fixed(j)) {
                            for (int k = 0; k < e[j]; ++k)
                                for (int l = 0; l < d[i]; ++l) t.num.push_back(lin(Z(j, k), 1, X(i, l), -1));
                        } else {
                            for (int l = 0; l < d[i]; ++l)
                                for (int k = 0; k < e[j] / 2; ++k) square_diff(t.num, X(i, l), Z(j, k));
                            if (e[j] % 2)
                                for (int l = 0; l < d[i]; ++l) t.num.push_back(lin(X(i, l), -1));
                        }
                    } else if (q.arrow_class(a) == NodeClass::Fixed) {
                        int i = ar.head, si = q.sigma_node(i);
                        if (!fixed(i)) {
                            for (int k = 0; k < e[i]; ++k)
                                for (int l = 0; l < d[si]; ++l) t.num.push_back(lin(Z(i, k), 1, X(si, l), -1));
                        } else {
                            for (int l = 0; l < d[si]; ++l)
                                for (int k = 0; k < e[i] / 2; ++k) square_diff(t.num, X(si, l), Z(i, k));
                            if (e[i] % 2)
                                for (int l = 0; l < d[si]; ++l) t.num.push_back(lin(X(si, l), -1));
                        }
                        bool weak = q.s(i) * q.tau(a) > 0;  // j <= k instead of j < k
                        for (int jj = 0; jj < d[si]; ++jj)
                            for (int kk = weak ? jj : jj + 1; kk < d[si]; ++kk)
                                t.num.push_back(lin(X(si, jj), -1, X(si, kk), -1));
                    }
                }
                terms.push_back(std::move(t));
            }
        });
        return KernelPlan(nvars, total(d), ng, std::move(terms));
    });
}

CohmElement cohm_action(const Quiver& q, const CohaElement& f, const CohmElement& g) {
    require_duality(q);
    if (static_cast<int>(f.d.size()) != q.num_nodes() || static_cast<int>(g.e.size()) != q.num_nodes())
        throw std::invalid_argument("dimension vector does not match the quiver");
    DimVec E = add(q.hyperbolic(f.d), g.e);
    q.require_admissible(E);
    auto plan = cohm_plan(q, f.d, g.e);
    return {E, plan->apply(f.poly, g.poly)};
}

QSeries ori_dt_series(const Quiver& q, int maxdim, int window) {
    require_duality(q);
    const int n = q.num_nodes();
    QSeries s(SeriesKind::Module, n, maxdim, window);
    for (auto& e : vectors_up_to(n, maxdim)) {
        if (!q.admissible(e)) continue;
        Laurent l = Laurent::monomial(0);
        l.prec = window;
        for (int i = 0; i < n; ++i) {
            if (q.node_class(i) == NodeClass::Plus) l = l * inverse_qfactorial(e[i], 1, window);
            if (q.node_class(i) == NodeClass::Fixed) l = l * inverse_qfactorial(e[i] / 2, 2, window);
        }
        l.truncate(window);
        int E = q.sd_euler_form(e);
        l = l.shifted(E);
        if (E % 2 != 0) l = l.negated();
        s.set(e, l);
    }
    return s;
}

const OriSlice& CohmQuotients::slice(const DimVec& e, int p) {
    auto key = std::make_pair(e, p);
    auto it = slices_.find(key);
    if (it != slices_.end()) return *it->second;
    auto sl = std::make_unique<OriSlice>();
    sl->e = e;
    sl->p = p;
    sl->coords = SliceCoords(cohm_blocks(q_, e), p);
    sl->image = RowReducer(sl->coords.size());

    // H_+ * M = V * M
    struct Gen {
        const Poly* v;
        DimVec d;
        DimVec e2;
        Poly g;
    };
    std::vector<Gen> gens;
    if (sl->coords.size() > 0) {
        DimVec half(e.size());
        for (size_t i = 0; i < e.size(); ++i) half[i] = e[i];
        for (auto& d : box_vectors(half)) {
            if (is_zero(d)) continue;
            DimVec h = q_.hyperbolic(d);
            if (!leq(h, e)) continue;
            DimVec e2 = sub(e, h);
            if (!q_.admissible(e2)) continue;
            int shift = cohm_plan(q_, d, e2)->degree_shift();
            BlockSpec gb = cohm_blocks(q_, e2);
            for (int p1 = 0; p1 <= p - shift; ++p1) {
                int p2 = p - shift - p1;
                if (p2 < 0) continue;
                const PrimitiveSlice& vs = coha_.slice(d, p1);
                if (vs.v_basis.empty()) continue;
                SliceCoords gc(gb, p2);
                for (int j = 0; j < gc.size(); ++j) {
                    Poly g = gc.basis_poly(j);
                    for (auto& v : vs.v_basis) gens.push_back({&v, d, e2, g});
                }
            }
        }
    }
    const int chunk = std::max(8, 4 * worker_count());
    for (size_t start = 0; start < gens.size() && !sl->image.full(); start += chunk) {
        int cnt = static_cast<int>(std::min(gens.size() - start, static_cast<size_t>(chunk)));
        auto prods = parallel_map<std::vector<Q>>(cnt, [&](int i) {
            const Gen& g = gens[start + i];
            CohmElement r = cohm_action(q_, {g.d, *g.v}, {g.e2, g.g});
            return sl->coords.coords(r.poly);
        });
        for (auto& c : prods) {
            if (sl->image.full()) break;
            sl->image.insert(std::move(c));
        }
    }
    for (int c : sl->image.free_columns()) sl->wprim_basis.push_back(sl->coords.basis_poly(c));
    return *slices_.emplace(key, std::move(sl)).first->second;
}

OriPrimitiveTable ori_dt_invariants(CohmQuotients& cm, int maxdim, int window) {
    const Quiver& q = cm.quiver();
    require_sigma_symmetric(q);
    OriPrimitiveTable t;
    t.dims.nodes = q.num_nodes();
    t.dims.maxdim = maxdim;
    for (auto& e : vectors_up_to(q.num_nodes(), maxdim)) {
        if (!q.admissible(e)) continue;
        int E = q.sd_euler_form(e);
        t.dims.prec[e] = E + window;
        for (int p = 0; 2 * p <= window; ++p) {
            const OriSlice& s = cm.slice(e, p);
            if (s.dim_wprim() == 0) continue;
            t.dims.set(e, 2 * p + E, s.dim_wprim());
            t.basis[{e, 2 * p + E}] = s.wprim_basis;
        }
    }
    return t;
}

OriPrimitiveTable ori_dt_invariants(const Quiver& q, int maxdim, int window) {
    CohmQuotients cm(q);
    return ori_dt_invariants(cm, maxdim, window);
}

std::string CheckReport::to_json() const {
    json j;
    j["property"] = property;
    j["pass"] = pass;
    j["instances"] = instances;
    j["counterexample"] = counterexample.empty() ? json(nullptr) : json(counterexample);
    if (!detail.empty()) j["detail"] = detail;
    return j.dump();
}

ModuleRelation check_module_relation(const Quiver& q, const CohaElement& f, const CohmElement& g) {
    require_sigma_symmetric(q);
    ModuleRelation r;
    r.sign = twist_sign(q, g.e, f.d);
    r.lhs = cohm_action(q, s_involution(q, f), g);
    CohmElement fg = cohm_action(q, f, g);
    r.rhs = {fg.e, fg.poly * Q(r.sign)};
    r.holds = r.lhs == r.rhs;
    return r;
}

namespace {

// Coefficientwise restriction of a module series to a set of classes.
QSeries restrict_series(const QSeries& s, const std::function<bool(const DimVec&)>& keep) {
    QSeries r(s.kind(), s.nodes(), s.maxdim(), s.window());
    for (auto& [e, l] : s.terms())
        if (keep(e)) r.set(e, l);
    return r;
}

QSeries shift_series(const QSeries& s, const DimVec& e, const Laurent& c, int maxdim) {
    QSeries one(SeriesKind::Module, s.nodes(), maxdim, s.window());
    one.set(e, c);
    return commutative_mul(s, one);
}

}  // namespace

LoopFactorization loop_factorization(const Quiver& q, int maxdim, int window) {
    require_sigma_symmetric(q);
    if (q.num_nodes() != 1) throw std::invalid_argument("loop_factorization needs a one-node quiver");
    LoopFactorization out;
    QSeries asig = ori_dt_series(q, maxdim, window);
    std::vector<int> classes = q.s(0) > 0 ? std::vector<int>{0, 1} : std::vector<int>{0};
    out.omega = QSeries(SeriesKind::Module, 1, maxdim, window);
    for (int c : classes) {
        SignedTable eq = equivariant_dt_loop(q, {c}, maxdim, window);
        QSeries ta = pochhammer_q2_product(eq, maxdim, window);
        out.tilde_a[{c}] = ta;
        QSeries part = restrict_series(asig, [&](const DimVec& e) { return e[0] % 2 == c; });
        out.omega = series_add(out.omega, commutative_mul(commutative_inverse(ta), part));
    }
    out.quotient_omega = ori_dt_invariants(q, maxdim, window).series(window);
    auto cmp = compare_series(out.omega, out.quotient_omega);
    out.consistent = cmp.equal;
    out.detail = cmp.detail;
    return out;
}

CheckReport general_factorization_check(const Quiver& q, int maxdim, int window) {
    require_sigma_symmetric(q);
    CheckReport rep;
    rep.property = "factorization";
    CohmQuotients cm(q);
    OriPrimitiveTable om = ori_dt_invariants(cm, maxdim, window);
    QSeries rhs(SeriesKind::Module, q.num_nodes(), maxdim, window);
    for (auto& [e, prec] : om.dims.prec) {
        Laurent c = Laurent::zero(prec);
        auto it = om.dims.mult.find(e);
        if (it != om.dims.mult.end())
            for (auto& [k, m] : it->second) c.add_term(k, Q(static_cast<long>(k % 2 == 0 ? m : -m)));
        if (c.is_zero()) continue;
        int rest = maxdim - total(e);
        SignedTable eq = q.num_nodes() == 1 ? equivariant_dt_loop(q, e, rest, window)
                                            : equivariant_dt_trace(cm.coha(), e, rest, window);
        QSeries ae = pochhammer_q2_product(eq, rest, window);
        QSeries lifted(SeriesKind::Module, q.num_nodes(), maxdim, window);
        for (auto& [d, l] : ae.terms()) lifted.set(d, l);
        rhs = series_add(rhs, shift_series(lifted, e, c, maxdim));
        ++rep.instances;
    }
    QSeries lhs = ori_dt_series(q, maxdim, window);
    auto cmp = compare_series(lhs, rhs);
    rep.pass = cmp.equal;
    if (!cmp.equal) rep.counterexample = cmp.detail;
    return rep;
}

WittSplit witt_decompose(const Quiver& q, const std::vector<CohmElement>& xs, const std::vector<CohaElement>& probes) {
    require_duality(q);
    WittSplit w;
    for (auto& x : xs) {
        auto c = q.witt_class(x.e);
        int idx = 0;
        for (int i = 0; i < q.num_nodes(); ++i) {
            if (q.node_class(i) != NodeClass::Fixed) continue;
            if (c[idx++] == 1 && q.s(i) < 0) w.forbidden_empty = false;
        }
        w.classes[c].push_back(x);
        for (auto& f : probes) {
            CohmElement y = cohm_action(q, f, x);
            if (q.witt_class(y.e) != c) w.action_preserves = false;
        }
    }
    return w;
}

namespace {

// A sum of homogeneous CoHA elements sharing H(d).
using Mixed = std::vector<CohaElement>;

Mixed mixed_product(const Quiver& q, const std::vector<const Mixed*>& fs) {
    Mixed acc{CohaElement::unit(DimVec(q.num_nodes(), 0))};
    for (const Mixed* f : fs) {
        std::map<DimVec, Poly> sum;
        for (auto& a : acc)
            for (auto& b : *f) {
                CohaElement c = shuffle_mul(q, a, b);
                auto it = sum.find(c.d);
                if (it == sum.end())
                    sum.emplace(c.d, c.poly);
                else
                    it->second += c.poly;
            }
        acc.clear();
        for (auto& [d, p] : sum)
            if (!p.is_zero()) acc.push_back({d, p});
    }
    return acc;
}

struct FreenessGen {
    DimVec h;  // H(d)
    int weight = 0;
    bool odd = false;
    Mixed elem;
};

}  // namespace

CheckReport check_freeness(const Quiver& q, int maxdim, int window) {
    require_sigma_symmetric(q);
    if (!q.supercommutativity_criterion())
        throw QuiverError(QuiverError::Code::NotSymmetric, "freeness check needs the supercommutativity criterion");
    CheckReport rep = general_factorization_check(q, maxdim, window);
    rep.property = "freeness";
    const bool numeric_ok = rep.pass;
    std::ostringstream bad;
    if (!numeric_ok) bad << "graded dimensions differ: " << rep.counterexample << "; ";
    rep.instances = 0;

    CohmQuotients cm(q);
    CohaQuotients& cq = cm.coha();
    const int n = q.num_nodes();
    // min weight of a product of generators with total H-dimension f
    std::map<DimVec, int> minw;
    std::function<int(const DimVec&)> min_weight = [&](const DimVec& f) -> int {
        if (is_zero(f)) return 0;
        auto it = minw.find(f);
        if (it != minw.end()) return it->second;
        int best = kExact;
        for (auto& d : box_vectors(f)) {
            if (is_zero(d)) continue;
            DimVec h = q.hyperbolic(d);
            if (!leq(h, f)) continue;
            int rest = min_weight(sub(f, h));
            if (rest >= kExact) continue;
            best = std::min(best, q.euler_form(d, d) + rest);
        }
        minw[f] = best;
        return best;
    };
    // generators of H(e_inf) per twist vector
    std::map<std::pair<DimVec, std::pair<DimVec, int>>, std::vector<FreenessGen>> gen_cache;
    auto generators = [&](const DimVec& einf, const DimVec& d, int p) -> const std::vector<FreenessGen>& {
        auto key = std::make_pair(einf, std::make_pair(d, p));
        auto it = gen_cache.find(key);
        if (it != gen_cache.end()) return it->second;
        std::vector<FreenessGen> out;
        const PrimitiveSlice& s = cq.slice(d, p);
        int sign = twist_sign(q, einf, d);
        int w = 2 * p + q.euler_form(d, d);
        bool odd = (q.euler_form(d, d) % 2) != 0;
        DimVec sd = q.sigma(d);
        if (sd == d) {
            RowReducer r = s.ideal;
            for (auto& v : s.v_basis) {
                Poly a = v + s_involution(q, {d, v}).poly * Q(sign);
                if (r.insert(s.coords.coords(a))) out.push_back({q.hyperbolic(d), w, odd, {{d, a}}});
            }
        } else if (d < sd) {
            for (auto& v : s.v_basis) {
                CohaElement tv = s_involution(q, {d, v});
                tv.poly = tv.poly * Q(sign);
                out.push_back({q.hyperbolic(d), w, odd, {{d, v}, tv}});
            }
        }
        return gen_cache.emplace(key, std::move(out)).first->second;
    };

    for (auto& et : vectors_up_to(n, maxdim)) {
        if (!q.admissible(et)) continue;
        int Et = q.sd_euler_form(et);
        for (int pt = 0; 2 * pt <= window; ++pt) {
            const int kt = 2 * pt + Et;
            SliceCoords target(cohm_blocks(q, et), pt);
            RowReducer rank(target.size());
            long domain = 0;
            // choose the W^prim factor first
            for (auto& einf : vectors_up_to(n, total(et))) {
                if (!q.admissible(einf) || !leq(einf, et)) continue;
                DimVec rem = sub(et, einf);
                int mw = min_weight(rem);
                if (mw >= kExact) continue;
                int Einf = q.sd_euler_form(einf);
                for (int pw = 0; 2 * pw + Einf + mw <= kt; ++pw) {
                    const OriSlice& ws = cm.slice(einf, pw);
                    if (ws.wprim_basis.empty()) continue;
                    int budget = kt - (2 * pw + Einf);
                    // candidate generators, flattened
                    std::vector<const FreenessGen*> flat;
                    for (auto& d : vectors_up_to(n, total(rem))) {
                        if (is_zero(d)) continue;
                        DimVec h = q.hyperbolic(d);
                        if (!leq(h, rem)) continue;
                        int rest = min_weight(sub(rem, h));
                        if (rest >= kExact) continue;
                        int chi = q.euler_form(d, d);
                        for (int p = 0; 2 * p + chi + rest <= budget; ++p)
                            for (auto& g : generators(einf, d, p)) flat.push_back(&g);
                    }
                    std::vector<const Mixed*> chosen;
                    std::function<void(size_t, DimVec, int)> rec = [&](size_t idx, DimVec r, int kb) {
                        if (is_zero(r)) {
                            if (kb != 0) return;
                            Mixed prod = mixed_product(q, chosen);
                            for (auto& w : ws.wprim_basis) {
                                ++domain;
                                Poly acc(target.nvars());
                                for (auto& part : prod) acc += cohm_action(q, part, {einf, w}).poly;
                                rank.insert(target.coords(acc));
                            }
                            return;
                        }
                        if (idx == flat.size()) return;
                        const FreenessGen& g = *flat[idx];
                        rec(idx + 1, r, kb);
                        int maxm = g.odd ? 1 : kExact;
                        DimVec rr = r;
                        int kk = kb, pushed = 0;
                        for (int m = 1; m <= maxm; ++m) {
                            if (!leq(g.h, rr)) break;
                            rr = sub(rr, g.h);
                            kk -= g.weight;
                            int rest = min_weight(rr);
                            if (rest >= kExact || kk < rest) break;
                            chosen.push_back(&g.elem);
                            ++pushed;
                            rec(idx + 1, rr, kk);
                        }
                        chosen.resize(chosen.size() - pushed);
                    };
                    rec(0, rem, budget);
                }
            }
            ++rep.instances;
            if (domain != target.size() || rank.rank() != target.size()) {
                rep.pass = false;
                bad << "slice " << dim_to_string(et) << " k=" << kt << ": dim M " << target.size() << ", domain "
                    << domain << ", rank " << rank.rank() << "; ";
            }
        }
    }
    rep.pass = rep.pass && numeric_ok;
    rep.counterexample = bad.str();
    return rep;
}

Quiver disjoint_double(const Quiver& base) {
    const int n = base.num_nodes();
    std::vector<std::string> nodes;
    for (auto& id : base.nodes()) nodes.push_back("a:" + id);
    for (auto& id : base.nodes()) nodes.push_back("b:" + id);
    std::vector<Arrow> arrows;
    for (auto& a : base.arrows()) arrows.push_back({"a:" + a.id, a.tail, a.head});
    for (auto& a : base.arrows()) arrows.push_back({"b:" + a.id, n + a.head, n + a.tail});
    const int m = base.num_arrows();
    std::vector<int> sn(2 * n), sa(2 * m);
    for (int i = 0; i < n; ++i) {
        sn[i] = n + i;
        sn[n + i] = i;
    }
    for (int a = 0; a < m; ++a) {
        sa[a] = m + a;
        sa[m + a] = a;
    }
    return Quiver::build(nodes, arrows, sn, sa, std::vector<int>(2 * n, 1), std::vector<int>(2 * m, 1));
}

CheckReport check_disjoint_union(const Quiver& base, int maxdim, uint64_t seed, int instances) {
    CheckReport rep;
    rep.property = "disjoint";
    const int n = base.num_nodes();
    Quiver qu = disjoint_double(base);
    Lcg rng(seed);
    auto pick = [&](int budget) {
        DimVec d(n, 0);
        int t = rng.range(0, budget);
        for (int k = 0; k < t; ++k) ++d[rng.range(0, n - 1)];
        return d;
    };
    auto join = [&](const DimVec& a, const DimVec& b) {
        DimVec r = a;
        r.insert(r.end(), b.begin(), b.end());
        return r;
    };
    for (int it = 0; it < instances; ++it) {
        DimVec d1 = pick(maxdim);
        DimVec d2 = pick(maxdim - total(d1));
        DimVec d3 = pick(maxdim - total(d1) - total(d2));
        Poly f1 = random_invariant(rng, coha_blocks(d1), rng.range(0, 2));
        Poly f2 = random_invariant(rng, coha_blocks(d2), rng.range(0, 2));
        Poly f3 = random_invariant(rng, coha_blocks(d3), rng.range(0, 2));
        ++rep.instances;
        std::ostringstream where;
        where << "d1=" << dim_to_string(d1) << " d2=" << dim_to_string(d2) << " d3=" << dim_to_string(d3);
        // E of U1 + S(U2) against chi(d2, d1)
        if (qu.sd_euler_form(join(d1, d2)) != base.euler_form(d2, d1)) {
            rep.pass = false;
            rep.counterexample = "E identity fails at " + where.str();
            break;
        }
        CohaElement a{join(d1, DimVec(n, 0)), f1};
        // H_{Q^op} = H_Q^op through the transpose, which negates the torus weights
        std::vector<Poly::VarImage> neg(f3.nvars());
        for (int v = 0; v < f3.nvars(); ++v) neg[v] = {v, -1};
        CohaElement b{join(DimVec(n, 0), d3), f3.substitute(neg, f3.nvars())};
        CohaElement ab = shuffle_mul(qu, a, b);
        CohmElement g{join(d2, d2), f2};
        CohmElement lhs = cohm_action(qu, ab, g);
        CohaElement rhs = shuffle_mul(base, shuffle_mul(base, {d1, f1}, {d2, f2}), {d3, f3});
        if (lhs.poly != rhs.poly) {
            rep.pass = false;
            rep.counterexample = "(f1 x f3) * f2 differs from f1 f2 f3 at " + where.str();
            break;
        }
    }
    return rep;
}

}  // namespace hallforge
