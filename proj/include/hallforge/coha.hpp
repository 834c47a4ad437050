#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hallforge/kernel.hpp"
#include "hallforge/quiver.hpp"
#include "hallforge/series.hpp"

namespace hallforge {

// Node i owns x_{i,1..d_i} at offset d_0+...+d_{i-1}.
BlockSpec coha_blocks(const DimVec& d);

struct CohaElement {
    DimVec d;
    Poly poly;

    static CohaElement unit(const DimVec& d);
    // Checks S_d invariance; throws std::invalid_argument otherwise.
    static CohaElement make(const DimVec& d, Poly p);
    bool is_zero() const { return poly.is_zero(); }
    bool operator==(const CohaElement& o) const { return d == o.d && poly == o.poly; }
};

// Cohomological weight 2 deg + chi(d,d) of a homogeneous element.
int coha_weight(const Quiver& q, const CohaElement& f);

std::shared_ptr<const KernelPlan> coha_plan(const Quiver& q, const DimVec& d1, const DimVec& d2);
CohaElement shuffle_mul(const Quiver& q, const CohaElement& f, const CohaElement& g);
// S_H: f(x~) with x~_{i,j} = -x_{sigma(i),j}, landing in sigma(d).
CohaElement s_involution(const Quiver& q, const CohaElement& f);

QSeries dt_series(const Quiver& q, int maxdim, int window);
InvariantTable dt_invariants(const Quiver& q, int maxdim, int window);

// One graded slice H_{d,p} (p = polynomial degree) with its quotients.
struct PrimitiveSlice {
    DimVec d;
    int p = 0;
    int dim_h = 0;
    SliceCoords coords;
    RowReducer ideal;     // image of multiplication H_+ x H_+
    RowReducer ideal_u;   // ideal + sigma_d H
    std::vector<Poly> v_basis;      // lift of V_{d,p} (monomial-symmetric)
    std::vector<Poly> vprim_basis;  // lift of V^prim_{d,p}, non-canonical
    // trace of S_H on V^prim_{d,p} (only when sigma(d) = d)
    long long s_trace = 0;
    int dim_v() const { return static_cast<int>(v_basis.size()); }
    int dim_vprim() const { return static_cast<int>(vprim_basis.size()); }
};

// Lazily computed quotient data of H_Q, indexed by (d, p).
class CohaQuotients {
public:
    explicit CohaQuotients(Quiver q) : q_(std::move(q)) {}
    const Quiver& quiver() const { return q_; }
    const PrimitiveSlice& slice(const DimVec& d, int p);
    // Lifts of V_{d'} for all d' != 0 with total <= maxdim, degrees <= pmax(d').
    void fill(int maxdim, const std::function<int(const DimVec&)>& pmax);

private:
    Quiver q_;
    std::map<std::pair<DimVec, int>, std::unique_ptr<PrimitiveSlice>> slices_;
};

struct PrimitiveTable {
    int nodes = 0;
    int maxdim = 0;
    int window = 0;
    // (d, k) -> dim V^prim_{(d,k)}
    InvariantTable dims;
    // stored non-canonical basis of V^prim per (d, k)
    std::map<std::pair<DimVec, int>, std::vector<Poly>> basis;
};

// Requires Q symmetric and the supercommutativity criterion.
PrimitiveTable primitive_dims(const Quiver& q, int maxdim, int window);
PrimitiveTable primitive_dims(CohaQuotients& cq, int maxdim, int window);

// Z2-equivariant DT invariants for the twist by e_target. The loop route
// applies the parity rule to dt_invariants; the trace route diagonalises
// the twisted S_H on V^prim.
SignedTable equivariant_dt(const Quiver& q, const DimVec& e_target, int maxdim, int window);
SignedTable equivariant_dt_loop(const Quiver& q, const DimVec& e_target, int maxdim, int window);
SignedTable equivariant_dt_trace(CohaQuotients& cq, const DimVec& e_target, int maxdim, int window);

// (-1)^{chi(e,d)+E(d)}
int twist_sign(const Quiver& q, const DimVec& e, const DimVec& d);

}  // namespace hallforge
