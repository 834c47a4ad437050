#pragma once

// Independent reference computations used by the unit tests. None of these
// call into the kernels they are compared against.

#include <functional>
#include <vector>

#include "hallforge/cohm.hpp"
#include "hallforge/random.hpp"

namespace oracle {

using hallforge::Poly;
using hallforge::Q;

inline Q eval(const Poly& p, const std::vector<Q>& pt) {
    Q s = 0;
    for (auto& [m, c] : p.terms()) {
        Q t = c;
        for (int v = 0; v < p.nvars(); ++v)
            for (int k = 0; k < m.e[v]; ++k) t *= pt[v];
        s += t;
    }
    return s;
}

// Distinct nonzero rationals with distinct squares and distinct pairwise sums.
inline std::vector<Q> generic_point(hallforge::Lcg& rng, int n) {
    std::vector<Q> pt;
    while (static_cast<int>(pt.size()) < n) {
        Q x(rng.range(1, 97), rng.range(1, 13));
        if (rng.range(0, 1)) x = -x;
        x.canonicalize();
        bool ok = true;
        for (auto& y : pt) ok = ok && x * x != y * y;
        if (ok) pt.push_back(x);
    }
    return pt;
}

// All increasing position lists of size k in {0..n-1}.
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Loop quiver L_m product at a point: sum over shuffles of
// f(x') g(x'') prod (x''_j - x'_i)^{m-1}.
inline Q loop_product_at(int m, const Poly& f, int d1, const Poly& g, int d2, const std::vector<Q>& pt) {
    Q total = 0;
    for (auto& a : subsets(d1 + d2, d1)) {
        std::vector<bool> in(d1 + d2, false);
        for (int i : a) in[i] = true;
        std::vector<Q> x, y;
        for (int i = 0; i < d1 + d2; ++i) (in[i] ? x : y).push_back(pt[i]);
        Q k = 1;
        for (auto& xi : x)
            for (auto& yj : y) {
                Q base = yj - xi;
                if (m - 1 >= 0)
                    for (int r = 0; r < m - 1; ++r) k *= base;
                else
                    for (int r = 0; r < 1 - m; ++r) k /= base;
            }
        total += eval(f, x) * eval(g, y) * k;
    }
    return total;
}

// Loop quiver action f * g at a point, straight from the signed shuffle
// formula: d new variables, floor(e/2) old ones, signs on the new ones.
inline Q loop_action_at(int s, const std::vector<int>& taus, const Poly& f, int d, const Poly& g, int e,
                        const std::vector<Q>& pt) {
    int k = e / 2;
    int rank = 2 * d + e;
    Q total = 0;
    for (auto& a : subsets(d + k, d)) {
        std::vector<bool> in(d + k, false);
        for (int i : a) in[i] = true;
        std::vector<Q> base_x, z;
        for (int i = 0; i < d + k; ++i) (in[i] ? base_x : z).push_back(pt[i]);
        for (int mask = 0; mask < (1 << d); ++mask) {
            std::vector<Q> x = base_x;
            for (int l = 0; l < d; ++l)
                if (mask >> l & 1) x[l] = -x[l];
            Q prodx = 1;
            for (auto& v : x) prodx *= v;
            Q den = 1;
            if (s < 0)
                den *= Q(d % 2 ? -1 : 1) * Q(1 << d) * prodx;
            else if (rank % 2 == 1)
                den *= Q(d % 2 ? -1 : 1) * prodx;
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) den *= -x[i] - x[j];
            Q cross = 1;
            for (auto& xv : x)
                for (auto& zv : z) cross *= xv * xv - zv * zv;
            den *= cross;
            Q num = 1;
            for (int t : taus) {
                num *= cross;
                if (e % 2 == 1)
                    for (auto& xv : x) num *= -xv;
                for (int i = 0; i < d; ++i)
                    for (int j = (s * t == 1 ? i : i + 1); j < d; ++j) num *= -x[i] - x[j];
            }
            total += eval(f, x) * eval(g, z) * num / den;
        }
    }
    return total;
}

// Self-dual Euler form from the arrow data.
inline int sd_euler(const hallforge::Quiver& q, const hallforge::DimVec& d) {
    int E = 0;
    for (int i = 0; i < q.num_nodes(); ++i) {
        if (q.node_class(i) == hallforge::NodeClass::Fixed) E += d[i] * (d[i] - q.s(i)) / 2;
        if (q.node_class(i) == hallforge::NodeClass::Plus) E += d[q.sigma_node(i)] * d[i];
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& ar = q.arrows()[a];
        if (q.arrow_class(a) == hallforge::NodeClass::Fixed) {
            int i = ar.head;
            E -= d[i] * (d[i] + q.tau(a) * q.s(i)) / 2;
        }
        if (q.arrow_class(a) == hallforge::NodeClass::Plus) E -= d[q.sigma_node(ar.tail)] * d[ar.head];
    }
    return E;
}

inline int euler(const hallforge::Quiver& q, const hallforge::DimVec& d, const hallforge::DimVec& dp) {
    int c = 0;
    for (int i = 0; i < q.num_nodes(); ++i) c += d[i] * dp[i];
    for (auto& a : q.arrows()) c -= d[a.tail] * dp[a.head];
    return c;
}

}  // namespace oracle
