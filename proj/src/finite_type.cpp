#include "hallforge/finite_type.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace hallforge {

int RootSystemA::index_of(const Interval& iv) const {
    for (size_t r = 0; r < roots.size(); ++r)
        if (roots[r] == iv) return static_cast<int>(r);
    throw std::invalid_argument("not a root");
}

namespace {

QuiverRep interval_rep(const Quiver& q, const Interval& iv) {
    QuiverRep rep;
    rep.dim.assign(q.num_nodes(), 0);
    for (int i = iv.a - 1; i < iv.b; ++i) rep.dim[i] = 1;
    for (auto& ar : q.arrows()) {
        std::vector<std::vector<Q>> m(rep.dim[ar.head], std::vector<Q>(rep.dim[ar.tail], Q(0)));
        if (rep.dim[ar.head] && rep.dim[ar.tail]) m[0][0] = 1;
        rep.maps.push_back(std::move(m));
    }
    return rep;
}

}  // namespace

HomExt hom_ext(const Quiver& q, const QuiverRep& I, const QuiverRep& J) {
    const int n = q.num_nodes();
    std::vector<int> off(n + 1, 0);
    for (int i = 0; i < n; ++i) off[i + 1] = off[i] + J.dim[i] * I.dim[i];
    const int unknowns = off[n];
    // f_i[r][c] lives at off[i] + r * I.dim[i] + c
    auto var = [&](int i, int r, int c) { return off[i] + r * I.dim[i] + c; };
    RowReducer eqs(unknowns);
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrows()[a];
        const auto& Ja = J.maps[a];
        const auto& Ia = I.maps[a];
        for (int r = 0; r < J.dim[ar.head]; ++r)
            for (int c = 0; c < I.dim[ar.tail]; ++c) {
                std::vector<Q> row(unknowns);
                for (int k = 0; k < J.dim[ar.tail]; ++k) row[var(ar.tail, k, c)] += Ja[r][k];
                for (int k = 0; k < I.dim[ar.head]; ++k) row[var(ar.head, r, k)] -= Ia[k][c];
                if (unknowns) eqs.insert(std::move(row));
            }
    }
    HomExt he;
    he.hom = unknowns - eqs.rank();
    he.ext = he.hom - q.euler_form(I.dim, J.dim);
    return he;
}

std::vector<int> ar_order(const RootSystemA& rs) {
    const int N = static_cast<int>(rs.roots.size());
    std::vector<std::vector<HomExt>> he(N, std::vector<HomExt>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) he[a][b] = hom_ext(rs.quiver, rs.indecomposables[a], rs.indecomposables[b]);
    std::vector<std::vector<int>> succ(N);
    std::vector<int> indeg(N, 0);
    auto before = [&](int x, int y) {
        succ[x].push_back(y);
        ++indeg[y];
    };
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            if (he[a][b].hom != 0) before(b, a);
            if (he[a][b].ext != 0) before(a, b);
        }
    // roots are stored in lex order, so the smallest index wins ties
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int r = 0; r < N; ++r)
        if (indeg[r] == 0) ready.push(r);
    std::vector<int> out;
    while (!ready.empty()) {
        int r = ready.top();
        ready.pop();
        out.push_back(r);
        for (int s : succ[r])
            if (--indeg[s] == 0) ready.push(s);
    }
    if (static_cast<int>(out.size()) != N) throw std::logic_error("Hom/Ext constraints contain a cycle");
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (he[out[i]][out[j]].hom != 0 || he[out[j]][out[i]].ext != 0)
                throw std::logic_error("order violates the Hom/Ext vanishing conditions");
    return out;
}

RootSystemA build_typeA(int n, const std::string& orientation, DualityType duality) {
    if (n < 1) throw std::invalid_argument("type A rank must be positive");
    if (static_cast<int>(orientation.size()) != n - 1)
        throw std::invalid_argument("orientation needs one letter per edge");
    for (int k = 0; k < n - 1; ++k) {
        char c = orientation[k];
        if (c != 'R' && c != 'L') throw std::invalid_argument("orientation letters are R or L");
        if (orientation[n - 2 - k] != c)
            throw QuiverError(QuiverError::Code::Involution, "orientation is not compatible with i -> n+1-i");
    }
    RootSystemA rs;
    rs.n = n;
    rs.orientation = orientation;
    rs.duality = duality;
    std::vector<std::string> nodes;
    for (int i = 1; i <= n; ++i) nodes.push_back(std::to_string(i));
    std::vector<Arrow> arrows;
    for (int k = 0; k < n - 1; ++k) {
        std::string id = "a" + std::to_string(k + 1);
        if (orientation[k] == 'R')
            arrows.push_back({id, k, k + 1});
        else
            arrows.push_back({id, k + 1, k});
    }
    std::vector<int> sn(n), sa(n - 1);
    for (int i = 0; i < n; ++i) sn[i] = n - 1 - i;
    for (int k = 0; k < n - 1; ++k) sa[k] = n - 2 - k;
    int s = duality == DualityType::Orthogonal ? 1 : -1;
    rs.quiver = Quiver::build(nodes, arrows, sn, sa, std::vector<int>(n, s), std::vector<int>(n - 1, -1));

    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            rs.roots.push_back({a, b});
            rs.indecomposables.push_back(interval_rep(rs.quiver, {a, b}));
            rs.dims.push_back(rs.indecomposables.back().dim);
        }
    const int N = static_cast<int>(rs.roots.size());
    for (int r = 0; r < N; ++r) rs.dual.push_back(rs.index_of({n + 1 - rs.roots[r].b, n + 1 - rs.roots[r].a}));
    rs.order = ar_order(rs);
    rs.position.assign(N, 0);
    for (int i = 0; i < N; ++i) rs.position[rs.order[i]] = i;
    bool hyperbolic = (n % 2 == 0) == (duality == DualityType::Orthogonal);
    rs.h = hyperbolic ? 0 : 1;
    for (int r = 0; r < N; ++r) {
        if (rs.dual[r] == r)
            rs.part.push_back(RootPart::Fixed);
        else
            rs.part.push_back(rs.position[r] < rs.position[rs.dual[r]] ? RootPart::Minus : RootPart::Plus);
        rs.admits_selfdual.push_back(rs.dual[r] == r && !hyperbolic);
    }
    return rs;
}

namespace {

constexpr TwistConvention kTw = TwistConvention::Weight;

QSeries xi_monomial(int nodes, const DimVec& e, int maxdim, int window) {
    QSeries s(SeriesKind::Module, nodes, maxdim, window);
    s.set(e, Laurent::monomial(0));
    return s;
}

// sum over subsets pi of `fixed` (in order) of
//   prod_{b in pi} E_{q^2}(q^{-1/2+h} t^b) prod_{b not in pi} E_{q^2}(q^{1/2-h} t^b) * xi^pi
// A root outside pi carries the L0 module with s = -1 when hyperbolic, and
// its even part with s = 1 otherwise.
QSeries fixed_part(const RootSystemA& rs, const std::vector<int>& fixed, int maxdim, int window) {
    const Quiver& q = rs.quiver;
    const int tmax = maxdim / 2;
    QSeries sum(SeriesKind::Module, rs.n, maxdim, window);
    for (unsigned mask = 0; mask < (1u << fixed.size()); ++mask) {
        DimVec e(rs.n, 0);
        bool ok = true;
        QSeries prod = QSeries::one(SeriesKind::Torus, rs.n, tmax, window);
        for (size_t k = 0; k < fixed.size(); ++k) {
            int r = fixed[k];
            bool in = (mask >> k) & 1;
            if (in) {
                if (!rs.admits_selfdual[r]) ok = false;
                e = add(e, rs.dims[r]);
            }
            prod = torus_mul(q, prod, qdilog2_at(in ? 2 * rs.h - 1 : 1 - 2 * rs.h, rs.dims[r], tmax, window), kTw);
        }
        if (!ok || total(e) > maxdim) continue;
        sum = series_add(sum, module_star(q, prod, xi_monomial(rs.n, e, maxdim, window), kTw));
    }
    return sum;
}

}  // namespace

DilogReport dilog_identity_check(const RootSystemA& rs, int maxdim, int window) {
    const Quiver& q = rs.quiver;
    const int tmax = maxdim / 2;
    std::vector<int> pi_plus, pi_fixed, delta_minus, delta_fixed;
    for (int r : rs.order) {
        if (rs.part[r] == RootPart::Fixed) {
            delta_fixed.push_back(r);
            if (rs.is_simple(r)) pi_fixed.push_back(r);
        }
        if (rs.part[r] == RootPart::Minus) delta_minus.push_back(r);
        if (rs.part[r] == RootPart::Plus && rs.is_simple(r)) pi_plus.push_back(r);
    }
    std::reverse(pi_plus.begin(), pi_plus.end());
    auto ordered = [&](const std::vector<int>& rts) {
        QSeries p = QSeries::one(SeriesKind::Torus, rs.n, tmax, window);
        for (int r : rts) p = torus_mul(q, p, qdilog_at(0, rs.dims[r], tmax, window), kTw);
        return p;
    };
    DilogReport rep;
    rep.lhs = module_star(q, ordered(pi_plus), fixed_part(rs, pi_fixed, maxdim, window), kTw);
    rep.rhs = module_star(q, ordered(delta_minus), fixed_part(rs, delta_fixed, maxdim, window), kTw);
    rep.asigma = ori_dt_series(q, maxdim, window);
    auto kmin = [&](const DimVec& e) { return q.sd_euler_form(e); };
    auto c1 = compare_series(rep.lhs, rep.rhs, kmin, 2);
    auto c2 = compare_series(rep.lhs, rep.asigma, kmin, 2);
    rep.enough_precision = c1.enough_precision;
    rep.equal = c1.equal && c2.equal && c1.enough_precision;
    if (!c1.equal) rep.detail += "lhs vs rhs: " + c1.detail;
    if (!c2.equal) rep.detail += "lhs vs orientifold series: " + c2.detail;
    if (!c1.enough_precision) rep.detail += "window too small: " + c1.detail;
    return rep;
}

CohmElement thom_polynomial(const RootSystemA& rs, const std::vector<int>& m) {
    const int N = static_cast<int>(rs.roots.size());
    if (static_cast<int>(m.size()) != N) throw MultiplicityError("one multiplicity per root is required");
    for (int r = 0; r < N; ++r) {
        if (m[r] < 0) throw MultiplicityError("multiplicities are nonnegative");
        if (m[rs.dual[r]] != m[r]) throw MultiplicityError("multiplicities must be invariant under S");
        if (rs.part[r] == RootPart::Fixed && !rs.admits_selfdual[r] && m[r] % 2)
            throw MultiplicityError("a fixed root without self-dual structure needs even multiplicity");
    }
    const Quiver& q = rs.quiver;
    CohaElement f = CohaElement::unit(DimVec(rs.n, 0));
    DimVec einf(rs.n, 0);
    for (int r : rs.order) {
        if (rs.part[r] == RootPart::Minus && m[r] > 0) f = shuffle_mul(q, f, CohaElement::unit(scale(rs.dims[r], m[r])));
        if (rs.part[r] == RootPart::Fixed) einf = add(einf, scale(rs.dims[r], m[r]));
    }
    return cohm_action(q, f, CohmElement::unit(q, einf));
}

namespace {

Quiver& zero_loop() {
    static Quiver l0 = Quiver::loop(0, 1, {});
    return l0;
}

// A factor of an ordered product: either a full family H^(beta) in n copies,
// or a parity-restricted family (L0 products of x^a, a of fixed parity).
struct FactorSpec {
    int root = 0;
    int copies = 0;
    int parity = -1;  // -1 for the full symmetric family
};

struct FactorElem {
    CohaElement elem;
    std::string label;
};

// degree r elements of one factor, embedded into H_{copies * beta}
std::vector<FactorElem> factor_basis(const RootSystemA& rs, const FactorSpec& f, int r) {
    std::vector<FactorElem> out;
    DimVec d = scale(rs.dims[f.root], f.copies);
    BlockSpec blocks = coha_blocks(d);
    const int nv = block_nvars(blocks);
    int node = rs.support_node(f.root);
    int off = 0;
    for (int i = 0; i < node; ++i) off += d[i];
    if (f.parity < 0) {
        for (auto& lam : partitions(r, f.copies)) {
            std::string lab = "m(";
            for (int x : lam) lab += std::to_string(x) + ",";
            out.push_back({{d, monomial_sym(lam, var_range(off, f.copies), nv)}, lab + ")"});
        }
        return out;
    }
    // strictly decreasing a_1 > ... > a_c of the given parity with sum a - c(c-1)/2 = r
    const int c = f.copies;
    const int target = r + c * (c - 1) / 2;
    std::vector<int> a;
    std::function<void(int, int)> rec = [&](int rem, int maxa) {
        if (static_cast<int>(a.size()) == c) {
            if (rem != 0) return;
            CohaElement prod = CohaElement::unit({0});
            for (int x : a) {
                Poly m = Poly::variable(1, 0).pow(x);
                prod = shuffle_mul(zero_loop(), prod, {{1}, m});
            }
            std::vector<Poly::VarImage> img(c);
            for (int j = 0; j < c; ++j) img[j] = {off + j, 1};
            std::string lab = "x(";
            for (int x : a) lab += std::to_string(x) + ",";
            out.push_back({{d, prod.poly.substitute(img, nv)}, lab + ")"});
            return;
        }
        int left = c - static_cast<int>(a.size()) - 1;  // entries still to place after this one
        for (int x = std::min(maxa, rem); x >= 0; --x) {
            if ((x % 2 + 2) % 2 != f.parity) continue;
            // the remaining entries are below x with the same parity
            if (left > 0 && x < 2 * left) continue;
            a.push_back(x);
            rec(rem - x, x - 2);
            a.pop_back();
        }
    };
    if (c == 0) {
        if (r == 0) out.push_back({CohaElement::unit(d), "1"});
        return out;
    }
    rec(target, target);
    return out;
}

struct SliceCheck {
    long domain = 0;
    int dim = 0;
    int rank = 0;
};

// Runs one target slice: factors in product order, then an optional action on unit(einf).
SliceCheck check_slice(const RootSystemA& rs, const std::vector<std::vector<FactorSpec>>& decomps,
                       const BlockSpec& target_blocks, int p, const DimVec* einf_of_decomp_base,
                       const std::vector<DimVec>& einfs) {
    const Quiver& q = rs.quiver;
    SliceCoords coords(target_blocks, p);
    RowReducer rank(coords.size());
    SliceCheck sc;
    sc.dim = coords.size();
    (void)einf_of_decomp_base;
    for (size_t di = 0; di < decomps.size(); ++di) {
        const auto& fs = decomps[di];
        const bool module = !einfs.empty();
        // degree shift of the evaluation chain
        int shift = 0;
        DimVec acc(rs.n, 0);
        for (auto& f : fs) {
            DimVec d = scale(rs.dims[f.root], f.copies);
            shift += coha_plan(q, acc, d)->degree_shift();
            acc = add(acc, d);
        }
        if (module) shift += cohm_plan(q, acc, einfs[di])->degree_shift();
        int r = p - shift;
        if (r < 0) continue;
        // distribute r over the factors
        std::vector<std::vector<FactorElem>> chosen_lists;
        std::vector<int> degs(fs.size(), 0);
        std::vector<std::vector<const FactorElem*>> elems;
        std::vector<std::vector<FactorElem>> cache;
        std::function<void(size_t, int)> dist = [&](size_t k, int rem) {
            if (k == fs.size()) {
                if (rem != 0) return;
                std::vector<std::vector<FactorElem>> bases;
                for (size_t j = 0; j < fs.size(); ++j) {
                    bases.push_back(factor_basis(rs, fs[j], degs[j]));
                    if (bases.back().empty()) return;
                }
                std::vector<size_t> idx(fs.size(), 0);
                std::vector<std::vector<const FactorElem*>> combos;
                while (true) {
                    std::vector<const FactorElem*> c;
                    for (size_t j = 0; j < fs.size(); ++j) c.push_back(&bases[j][idx[j]]);
                    combos.push_back(std::move(c));
                    size_t j = 0;
                    while (j < fs.size() && ++idx[j] == bases[j].size()) idx[j++] = 0;
                    if (j == fs.size()) break;
                }
                sc.domain += static_cast<long>(combos.size());
                auto imgs = parallel_map<std::vector<Q>>(static_cast<int>(combos.size()), [&](int i) {
                    CohaElement prod = CohaElement::unit(DimVec(rs.n, 0));
                    for (auto* e : combos[i]) prod = shuffle_mul(q, prod, e->elem);
                    if (module) return coords.coords(cohm_action(q, prod, CohmElement::unit(q, einfs[di])).poly);
                    return coords.coords(prod.poly);
                });
                for (auto& v : imgs) rank.insert(std::move(v));
                return;
            }
            for (int x = 0; x <= rem; ++x) {
                degs[k] = x;
                dist(k + 1, rem - x);
            }
        };
        if (fs.empty()) {
            if (r == 0) {
                ++sc.domain;
                if (module)
                    rank.insert(coords.coords(CohmElement::unit(q, einfs[di]).poly));
                else
                    rank.insert(coords.coords(CohaElement::unit(DimVec(rs.n, 0)).poly));
            }
            continue;
        }
        dist(0, r);
    }
    sc.rank = rank.rank();
    return sc;
}

// All ways to write `target` as sum_k n_k * w_k with n_k >= 0.
void decompositions(const std::vector<DimVec>& w, const DimVec& target, std::vector<int>& cur, size_t k,
                    std::vector<std::vector<int>>& out) {
    if (k == w.size()) {
        if (is_zero(target)) out.push_back(cur);
        return;
    }
    DimVec rem = target;
    for (int c = 0;; ++c) {
        cur.push_back(c);
        decompositions(w, rem, cur, k + 1, out);
        cur.pop_back();
        if (is_zero(w[k]) || !leq(w[k], rem)) break;
        rem = sub(rem, w[k]);
    }
}

std::string slice_name(const DimVec& d, int p, const SliceCheck& s) {
    std::ostringstream o;
    o << dim_to_string(d) << " deg " << p << ": dim " << s.dim << ", domain " << s.domain << ", rank " << s.rank;
    return o.str();
}

PbwReport coha_ordering(const RootSystemA& rs, const std::vector<int>& seq, const PbwBound& b, const std::string& tag) {
    PbwReport rep;
    std::vector<DimVec> w;
    for (int r : seq) w.push_back(rs.dims[r]);
    for (auto& d : box_vectors(DimVec(rs.n, b.node_dim))) {
        if (is_zero(d)) continue;
        std::vector<std::vector<int>> ds;
        std::vector<int> cur;
        decompositions(w, d, cur, 0, ds);
        std::vector<std::vector<FactorSpec>> decomps;
        for (auto& n : ds) {
            std::vector<FactorSpec> fs;
            for (size_t k = 0; k < seq.size(); ++k)
                if (n[k] > 0) fs.push_back({seq[k], n[k], -1});
            decomps.push_back(fs);
        }
        for (int p = 0; p <= b.degree; ++p) {
            SliceCheck s = check_slice(rs, decomps, coha_blocks(d), p, nullptr, {});
            ++rep.slices;
            if (s.domain != s.dim || s.rank != s.dim) {
                rep.pass = false;
                if (rep.counterexample.empty()) rep.counterexample = tag + " " + slice_name(d, p, s);
            }
        }
    }
    return rep;
}

PbwReport cohm_ordering(const RootSystemA& rs, const std::vector<int>& hseq, const std::vector<int>& fixed,
                        const PbwBound& b, const std::string& tag) {
    const Quiver& q = rs.quiver;
    PbwReport rep;
    // weights: H(beta) per hyperbolic factor, 2 beta per fixed factor
    std::vector<DimVec> w;
    for (int r : hseq) w.push_back(q.hyperbolic(rs.dims[r]));
    for (int r : fixed) w.push_back(scale(rs.dims[r], 2));
    for (auto& e : box_vectors(DimVec(rs.n, b.node_dim))) {
        if (!q.admissible(e)) continue;
        std::vector<std::vector<FactorSpec>> decomps;
        std::vector<DimVec> einfs;
        for (unsigned mask = 0; mask < (1u << fixed.size()); ++mask) {
            DimVec epi(rs.n, 0);
            bool ok = true;
            for (size_t k = 0; k < fixed.size(); ++k)
                if ((mask >> k) & 1) {
                    if (!rs.admits_selfdual[fixed[k]]) ok = false;
                    epi = add(epi, rs.dims[fixed[k]]);
                }
            if (!ok || !leq(epi, e)) continue;
            std::vector<std::vector<int>> ds;
            std::vector<int> cur;
            decompositions(w, sub(e, epi), cur, 0, ds);
            for (auto& n : ds) {
                std::vector<FactorSpec> fs;
                for (size_t k = 0; k < hseq.size(); ++k)
                    if (n[k] > 0) fs.push_back({hseq[k], n[k], -1});
                for (size_t k = 0; k < fixed.size(); ++k) {
                    int c = n[hseq.size() + k];
                    if (c == 0) continue;
                    int r = fixed[k];
                    bool in = (mask >> k) & 1;
                    // type C (no self-dual structure) and B use odd powers, D even
                    int parity = (!rs.admits_selfdual[r] || in) ? 1 : 0;
                    fs.push_back({r, c, parity});
                }
                decomps.push_back(fs);
                einfs.push_back(epi);
            }
        }
        for (int p = 0; p <= b.degree; ++p) {
            SliceCheck s = check_slice(rs, decomps, cohm_blocks(q, e), p, nullptr, einfs);
            ++rep.slices;
            if (s.domain != s.dim || s.rank != s.dim) {
                rep.pass = false;
                if (rep.counterexample.empty()) rep.counterexample = tag + " " + slice_name(e, p, s);
            }
        }
    }
    return rep;
}

PbwReport merge(PbwReport a, const PbwReport& b) {
    a.pass = a.pass && b.pass;
    a.slices += b.slices;
    if (a.counterexample.empty()) a.counterexample = b.counterexample;
    return a;
}

}  // namespace

PbwReport pbw_check_coha_sequence(const RootSystemA& rs, const std::vector<int>& seq, const PbwBound& bound) {
    return coha_ordering(rs, seq, bound, "sequence");
}

PbwReport pbw_check_coha(const RootSystemA& rs, const PbwBound& bound) {
    std::vector<int> simple, all = rs.order;
    for (int r : rs.order)
        if (rs.is_simple(r)) simple.push_back(r);
    std::reverse(simple.begin(), simple.end());
    return merge(coha_ordering(rs, simple, bound, "simple"), coha_ordering(rs, all, bound, "indecomposable"));
}

PbwReport pbw_check_cohm(const RootSystemA& rs, const PbwBound& bound) {
    std::vector<int> pi_plus, pi_fixed, delta_minus, delta_fixed;
    for (int r : rs.order) {
        if (rs.part[r] == RootPart::Fixed) {
            delta_fixed.push_back(r);
            if (rs.is_simple(r)) pi_fixed.push_back(r);
        }
        if (rs.part[r] == RootPart::Minus) delta_minus.push_back(r);
        if (rs.part[r] == RootPart::Plus && rs.is_simple(r)) pi_plus.push_back(r);
    }
    std::reverse(pi_plus.begin(), pi_plus.end());
    return merge(cohm_ordering(rs, pi_plus, pi_fixed, bound, "simple"),
                 cohm_ordering(rs, delta_minus, delta_fixed, bound, "indecomposable"));
}

}  // namespace hallforge
