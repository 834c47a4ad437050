#pragma once

#include <string>
#include <vector>

#include "hallforge/cohm.hpp"

namespace hallforge {

struct Interval {
    int a = 1, b = 1;  // 1-based nodes a..b
    bool operator==(const Interval& o) const { return a == o.a && b == o.b; }
};

// Matrices per arrow, rows indexed by the head space.
struct QuiverRep {
    DimVec dim;
    std::vector<std::vector<std::vector<Q>>> maps;
};

enum class DualityType { Orthogonal, Symplectic };

enum class RootPart { Minus, Fixed, Plus };

struct RootSystemA {
    int n = 0;
    std::string orientation;  // edge k joins k and k+1: 'R' is k -> k+1, 'L' is k+1 -> k
    DualityType duality = DualityType::Orthogonal;
    Quiver quiver;
    std::vector<Interval> roots;  // lex order on (a, b)
    std::vector<DimVec> dims;
    std::vector<QuiverRep> indecomposables;
    std::vector<int> order;     // root indices, increasing
    std::vector<int> position;  // inverse of order
    std::vector<RootPart> part;
    std::vector<int> dual;  // S on root indices
    std::vector<bool> admits_selfdual;
    int h = 0;

    bool is_simple(int r) const { return roots[r].a == roots[r].b; }
    int support_node(int r) const { return roots[r].a - 1; }
    int index_of(const Interval& iv) const;
    bool hyperbolic() const { return h == 0; }
};

// Sigma(i) = n+1-i, all tau = -1, s = +1 (orthogonal) or -1 (symplectic).
RootSystemA build_typeA(int n, const std::string& orientation, DualityType duality);

struct HomExt {
    int hom = 0;
    int ext = 0;
};
HomExt hom_ext(const Quiver& q, const QuiverRep& i, const QuiverRep& j);

// Topological sort of the Hom/Ext constraints, lex tie-break; throws on a
// cycle or when the result violates the vanishing conditions.
std::vector<int> ar_order(const RootSystemA& rs);

struct DilogReport {
    QSeries lhs, rhs, asigma;
    bool equal = false;
    bool enough_precision = true;
    std::string detail;
};
// Both ordered products as module series over total dimension <= maxdim,
// also compared against the orientifold DT series.
DilogReport dilog_identity_check(const RootSystemA& rs, int maxdim, int window);

class MultiplicityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
// m[r] per root index; m must be S-invariant, even on fixed roots without a
// self-dual structure.
CohmElement thom_polynomial(const RootSystemA& rs, const std::vector<int>& m);

struct PbwBound {
    int node_dim = 2;  // per-node bound on the target dimension vector
    int degree = 3;    // polynomial degree bound of the target slice
};

struct PbwReport {
    bool pass = true;
    int slices = 0;
    std::string counterexample;
};

// Ordered CoHA products over an arbitrary root sequence.
PbwReport pbw_check_coha_sequence(const RootSystemA& rs, const std::vector<int>& seq, const PbwBound& bound);

// Simple-root ordering and indecomposable ordering; both must pass.
PbwReport pbw_check_coha(const RootSystemA& rs, const PbwBound& bound);
PbwReport pbw_check_cohm(const RootSystemA& rs, const PbwBound& bound);

}  // namespace hallforge
