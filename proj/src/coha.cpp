#include "hallforge/coha.hpp"

#include <algorithm>
#include <sstream>

namespace hallforge {

namespace {

std::vector<int> offsets(const DimVec& d) {
    std::vector<int> off(d.size() + 1, 0);
    for (size_t i = 0; i < d.size(); ++i) off[i + 1] = off[i] + d[i];
    return off;
}

std::string dims_key(const DimVec& d) {
    std::string s;
    for (int x : d) s += std::to_string(x) + ",";
    return s;
}

void require_duality(const Quiver& q) {
    if (!q.has_duality()) throw QuiverError(QuiverError::Code::NoDuality, "quiver has no duality structure");
}

}  // namespace

BlockSpec coha_blocks(const DimVec& d) {
    BlockSpec b;
    int off = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        b.push_back({static_cast<int>(i), false, off, d[i]});
        off += d[i];
    }
    return b;
}

CohaElement CohaElement::unit(const DimVec& d) { return {d, Poly::constant(total(d), 1)}; }

CohaElement CohaElement::make(const DimVec& d, Poly p) {
    for (int x : d)
        if (x < 0) throw std::invalid_argument("negative dimension vector");
    if (p.nvars() != total(d)) throw std::invalid_argument("CoHA element has the wrong variable count");
    if (p.has_negative_exponent()) throw std::invalid_argument("CoHA element is not a polynomial");
    if (!is_invariant(coha_blocks(d), p)) throw std::invalid_argument("CoHA element is not Weyl invariant");
    return {d, std::move(p)};
}

int coha_weight(const Quiver& q, const CohaElement& f) {
    int deg = f.poly.is_zero() ? 0 : f.poly.degree();
    return 2 * deg + q.euler_form(f.d, f.d);
}

std::shared_ptr<const KernelPlan> coha_plan(const Quiver& q, const DimVec& d1, const DimVec& d2) {
    std::string key = "coha|" + q.to_json() + "|" + dims_key(d1) + "|" + dims_key(d2);
    return cached_plan(key, [&] {
        const int n = q.num_nodes();
        DimVec d = add(d1, d2);
        auto off = offsets(d), off1 = offsets(d1), off2 = offsets(d2);
        std::vector<std::vector<int>> sizes(n);
        for (int i = 0; i < n; ++i) sizes[i] = {d1[i], d2[i]};
        std::vector<KernelTerm> terms;
        for_each_shuffle_tuple(sizes, [&](const std::vector<Shuffle>& sh) {
            KernelTerm t;
            t.map_f.resize(total(d1));
            t.map_g.resize(total(d2));
            auto x1 = [&](int i, int a) { return SVar{off[i] + sh[i][0][a], 1}; };
            auto x2 = [&](int i, int b) { return SVar{off[i] + sh[i][1][b], 1}; };
            for (int i = 0; i < n; ++i) {
                for (int a = 0; a < d1[i]; ++a) t.map_f[off1[i] + a] = {x1(i, a).var, 1};
                for (int b = 0; b < d2[i]; ++b) t.map_g[off2[i] + b] = {x2(i, b).var, 1};
            }
            for (auto& ar : q.arrows())
                for (int b = 0; b < d2[ar.head]; ++b)
                    for (int a = 0; a < d1[ar.tail]; ++a) t.num.push_back(lin(x2(ar.head, b), 1, x1(ar.tail, a), -1));
            for (int i = 0; i < n; ++i)
                for (int b = 0; b < d2[i]; ++b)
                    for (int a = 0; a < d1[i]; ++a) t.den.push_back(lin(x2(i, b), 1, x1(i, a), -1));
            terms.push_back(std::move(t));
        });
        return KernelPlan(total(d), total(d1), total(d2), std::move(terms));
    });
}

CohaElement shuffle_mul(const Quiver& q, const CohaElement& f, const CohaElement& g) {
    if (static_cast<int>(f.d.size()) != q.num_nodes() || static_cast<int>(g.d.size()) != q.num_nodes())
        throw std::invalid_argument("dimension vector does not match the quiver");
    auto plan = coha_plan(q, f.d, g.d);
    return {add(f.d, g.d), plan->apply(f.poly, g.poly)};
}

CohaElement s_involution(const Quiver& q, const CohaElement& f) {
    require_duality(q);
    DimVec sd = q.sigma(f.d);
    auto off = offsets(f.d), offs = offsets(sd);
    std::vector<Poly::VarImage> map(total(f.d));
    for (int i = 0; i < q.num_nodes(); ++i)
        for (int j = 0; j < f.d[i]; ++j) map[off[i] + j] = {offs[q.sigma_node(i)] + j, -1};
    return {sd, f.poly.substitute(map, total(sd))};
}

QSeries dt_series(const Quiver& q, int maxdim, int window) {
    const int n = q.num_nodes();
    QSeries s(SeriesKind::Torus, n, maxdim, window);
    for (auto& d : vectors_up_to(n, maxdim)) {
        int chi = q.euler_form(d, d);
        Laurent l = Laurent::monomial(0);
        l.prec = window;
        for (int x : d) l = l * inverse_qfactorial(x, 1, window);
        l.truncate(window);
        l = l.shifted(chi);
        if (chi % 2 != 0) l = l.negated();
        s.set(d, l);
    }
    return s;
}

InvariantTable dt_invariants(const Quiver& q, int maxdim, int window) {
    if (!q.is_symmetric()) throw QuiverError(QuiverError::Code::NotSymmetric, "dt_invariants needs a symmetric quiver");
    return invert_pochhammer_factorization(dt_series(q, maxdim, window));
}

const PrimitiveSlice& CohaQuotients::slice(const DimVec& d, int p) {
    auto key = std::make_pair(d, p);
    auto it = slices_.find(key);
    if (it != slices_.end()) return *it->second;
    auto sl = std::make_unique<PrimitiveSlice>();
    sl->d = d;
    sl->p = p;
    BlockSpec blocks = coha_blocks(d);
    sl->coords = SliceCoords(blocks, p);
    sl->dim_h = sl->coords.size();
    sl->ideal = RowReducer(sl->dim_h);

    // generators v * h, v in V_{d'}, h in H_{d''}; H_+ H_+ = V H_+
    struct Gen {
        const Poly* v;
        DimVec d1, d2;
        Poly h;
    };
    std::vector<Gen> gens;
    if (sl->dim_h > 0) {
        for (auto& d1 : box_vectors(d)) {
            if (is_zero(d1) || d1 == d) continue;
            DimVec d2 = sub(d, d1);
            int shift = -q_.euler_form(d1, d2);
            for (int p1 = 0; p1 <= p - shift; ++p1) {
                int p2 = p - shift - p1;
                if (p2 < 0) continue;
                const PrimitiveSlice& vs = slice(d1, p1);
                if (vs.v_basis.empty()) continue;
                SliceCoords hc(coha_blocks(d2), p2);
                for (int j = 0; j < hc.size(); ++j) {
                    Poly h = hc.basis_poly(j);
                    for (auto& v : vs.v_basis) gens.push_back({&v, d1, d2, h});
                }
            }
        }
    }
    const int chunk = std::max(8, 4 * worker_count());
    for (size_t start = 0; start < gens.size() && !sl->ideal.full(); start += chunk) {
        int cnt = static_cast<int>(std::min(gens.size() - start, static_cast<size_t>(chunk)));
        auto prods = parallel_map<std::vector<Q>>(cnt, [&](int i) {
            const Gen& g = gens[start + i];
            CohaElement r = shuffle_mul(q_, {g.d1, *g.v}, {g.d2, g.h});
            return sl->coords.coords(r.poly);
        });
        for (auto& c : prods) {
            if (sl->ideal.full()) break;
            sl->ideal.insert(std::move(c));
        }
    }
    for (int c : sl->ideal.free_columns()) sl->v_basis.push_back(sl->coords.basis_poly(c));

    sl->ideal_u = sl->ideal;
    if (p >= 1 && !sl->ideal_u.full()) {
        const int nv = total(d);
        Poly sig(nv);
        for (int v = 0; v < nv; ++v) sig += Poly::variable(nv, v);
        SliceCoords lower(blocks, p - 1);
        for (int j = 0; j < lower.size() && !sl->ideal_u.full(); ++j)
            sl->ideal_u.insert(sl->coords.coords(sig * lower.basis_poly(j)));
    }
    auto free_u = sl->ideal_u.free_columns();
    for (int c : free_u) sl->vprim_basis.push_back(sl->coords.basis_poly(c));

    if (q_.has_duality() && q_.sigma(d) == d) {
        Q tr = 0;
        for (int c : free_u) {
            CohaElement s = s_involution(q_, {d, sl->coords.basis_poly(c)});
            auto v = sl->coords.coords(s.poly);
            sl->ideal_u.reduce(v);
            tr += v[c];
        }
        if (tr.get_den() != 1) throw std::logic_error("non-integral trace of an involution");
        sl->s_trace = tr.get_num().get_si();
    }
    return *slices_.emplace(key, std::move(sl)).first->second;
}

void CohaQuotients::fill(int maxdim, const std::function<int(const DimVec&)>& pmax) {
    for (auto& d : vectors_up_to(q_.num_nodes(), maxdim)) {
        if (is_zero(d)) continue;
        for (int p = 0; p <= pmax(d); ++p) slice(d, p);
    }
}

namespace {

void require_primitive_preconditions(const Quiver& q) {
    if (!q.is_symmetric())
        throw QuiverError(QuiverError::Code::NotSymmetric, "primitive parts need a symmetric quiver");
    if (!q.supercommutativity_criterion())
        throw QuiverError(QuiverError::Code::NotSymmetric,
                          "untwisted product is not supercommutative for this quiver");
}

}  // namespace

PrimitiveTable primitive_dims(CohaQuotients& cq, int maxdim, int window) {
    const Quiver& q = cq.quiver();
    require_primitive_preconditions(q);
    PrimitiveTable t;
    t.nodes = q.num_nodes();
    t.maxdim = maxdim;
    t.window = window;
    t.dims.nodes = t.nodes;
    t.dims.maxdim = maxdim;
    for (auto& d : vectors_up_to(t.nodes, maxdim)) {
        if (is_zero(d)) continue;
        int chi = q.euler_form(d, d);
        t.dims.prec[d] = chi + window;
        for (int p = 0; 2 * p <= window; ++p) {
            const PrimitiveSlice& s = cq.slice(d, p);
            if (s.dim_vprim() == 0) continue;
            int k = 2 * p + chi;
            t.dims.set(d, k, s.dim_vprim());
            t.basis[{d, k}] = s.vprim_basis;
        }
    }
    return t;
}

PrimitiveTable primitive_dims(const Quiver& q, int maxdim, int window) {
    CohaQuotients cq(q);
    return primitive_dims(cq, maxdim, window);
}

int twist_sign(const Quiver& q, const DimVec& e, const DimVec& d) {
    int x = q.euler_form(e, d) + q.sd_euler_form(d);
    return (x % 2 == 0) ? 1 : -1;
}

namespace {

void require_sigma_symmetric(const Quiver& q) {
    require_duality(q);
    if (!q.is_sigma_symmetric())
        throw QuiverError(QuiverError::Code::NotSymmetric, "operation needs a sigma-symmetric quiver");
}

SignedTable empty_signed(int nodes, int maxdim) {
    SignedTable t;
    t.plus.nodes = t.minus.nodes = nodes;
    t.plus.maxdim = t.minus.maxdim = maxdim;
    return t;
}

void note_prec(SignedTable& t, const DimVec& e, int prec) {
    for (auto* tab : {&t.plus, &t.minus}) {
        auto it = tab->prec.find(e);
        if (it == tab->prec.end())
            tab->prec[e] = prec;
        else
            it->second = std::min(it->second, prec);
    }
}

}  // namespace

SignedTable equivariant_dt_loop(const Quiver& q, const DimVec& e_target, int maxdim, int window) {
    require_sigma_symmetric(q);
    if (q.num_nodes() != 1) throw std::invalid_argument("loop parity rule applies to one-node quivers");
    q.require_admissible(e_target);
    InvariantTable om = dt_invariants(q, maxdim / 2, window);
    SignedTable t = empty_signed(1, maxdim);
    for (auto& [d, p] : om.prec) {
        if (is_zero(d)) continue;
        note_prec(t, q.hyperbolic(d), p);
    }
    for (auto& [d, row] : om.mult) {
        if (is_zero(d)) continue;
        int chi = q.euler_form(d, d);
        int base = q.euler_form(e_target, d) + q.sd_euler_form(d);
        for (auto& [k, m] : row) {
            int parity = base + (k - chi) / 2;
            auto& tab = (parity % 2 == 0) ? t.plus : t.minus;
            tab.set(q.hyperbolic(d), k, tab.at(q.hyperbolic(d), k) + m);
        }
    }
    return t;
}

SignedTable equivariant_dt_trace(CohaQuotients& cq, const DimVec& e_target, int maxdim, int window) {
    const Quiver& q = cq.quiver();
    require_sigma_symmetric(q);
    require_primitive_preconditions(q);
    q.require_admissible(e_target);
    SignedTable t = empty_signed(q.num_nodes(), maxdim);
    for (auto& d : vectors_up_to(q.num_nodes(), maxdim / 2)) {
        if (is_zero(d)) continue;
        DimVec sd = q.sigma(d);
        if (sd != d && !(d < sd)) continue;  // one representative per swapped pair
        DimVec e = q.hyperbolic(d);
        int chi = q.euler_form(d, d);
        note_prec(t, e, chi + window);
        int sign = twist_sign(q, e_target, d);
        for (int p = 0; 2 * p <= window; ++p) {
            const PrimitiveSlice& s = cq.slice(d, p);
            long long dim = s.dim_vprim();
            if (dim == 0) continue;
            long long plus, minus;
            if (sd == d) {
                long long tr = sign * s.s_trace;
                plus = (dim + tr) / 2;
                minus = (dim - tr) / 2;
            } else {
                plus = minus = dim;
            }
            int k = 2 * p + chi;
            t.plus.set(e, k, t.plus.at(e, k) + plus);
            t.minus.set(e, k, t.minus.at(e, k) + minus);
        }
    }
    return t;
}

SignedTable equivariant_dt(const Quiver& q, const DimVec& e_target, int maxdim, int window) {
    require_sigma_symmetric(q);
    if (q.num_nodes() == 1) return equivariant_dt_loop(q, e_target, maxdim, window);
    CohaQuotients cq(q);
    return equivariant_dt_trace(cq, e_target, maxdim, window);
}

}  // namespace hallforge
