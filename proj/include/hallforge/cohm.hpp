#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hallforge/coha.hpp"

namespace hallforge {

// GL block of e_i variables per Q0^+ node, BCD block of floor(e_i/2)
// variables per fixed node, in node order; Q0^- nodes carry none.
BlockSpec cohm_blocks(const Quiver& q, const DimVec& e);

struct CohmElement {
    DimVec e;
    Poly poly;

    static CohmElement unit(const Quiver& q, const DimVec& e);
    // Checks admissibility and invariance under the full Weyl group.
    static CohmElement make(const Quiver& q, const DimVec& e, Poly p);
    bool is_zero() const { return poly.is_zero(); }
    bool operator==(const CohmElement& o) const { return e == o.e && poly == o.poly; }
};

// 2 deg + E(e)
int cohm_weight(const Quiver& q, const CohmElement& g);

enum class BcdType { B, C, D };
BcdType bcd_type(int s, int rank);

std::shared_ptr<const KernelPlan> cohm_plan(const Quiver& q, const DimVec& d, const DimVec& e);
CohmElement cohm_action(const Quiver& q, const CohaElement& f, const CohmElement& g);

QSeries ori_dt_series(const Quiver& q, int maxdim, int window);

// One slice M_{e,p} with the image of H_+ * M and the stored complement.
struct OriSlice {
    DimVec e;
    int p = 0;
    SliceCoords coords;
    RowReducer image;
    std::vector<Poly> wprim_basis;
    int dim_m() const { return coords.size(); }
    int dim_wprim() const { return static_cast<int>(wprim_basis.size()); }
};

class CohmQuotients {
public:
    explicit CohmQuotients(Quiver q) : q_(q), coha_(std::move(q)) {}
    const Quiver& quiver() const { return q_; }
    CohaQuotients& coha() { return coha_; }
    const OriSlice& slice(const DimVec& e, int p);

private:
    Quiver q_;
    CohaQuotients coha_;
    std::map<std::pair<DimVec, int>, std::unique_ptr<OriSlice>> slices_;
};

struct OriPrimitiveTable {
    InvariantTable dims;  // (e, k) -> dim W^prim_{(e,k)}, e = 0 included
    std::map<std::pair<DimVec, int>, std::vector<Poly>> basis;
    QSeries series(int window) const { return dims.to_series(SeriesKind::Module, window); }
};

// Requires a sigma-symmetric quiver.
OriPrimitiveTable ori_dt_invariants(const Quiver& q, int maxdim, int window);
OriPrimitiveTable ori_dt_invariants(CohmQuotients& cm, int maxdim, int window);

// ---- checks ----

struct CheckReport {
    std::string property;
    bool pass = true;
    int instances = 0;
    std::string counterexample;
    std::string detail;
    std::string to_json() const;
};

struct ModuleRelation {
    CohmElement lhs, rhs;  // S_H(f)*g and sign * f*g
    int sign = 1;
    bool holds = false;
};
ModuleRelation check_module_relation(const Quiver& q, const CohaElement& f, const CohmElement& g);

struct LoopFactorization {
    std::map<std::vector<int>, QSeries> tilde_a;  // per Witt class
    QSeries omega;                                // A^sigma / A~ by class
    QSeries quotient_omega;                       // from ori_dt_invariants
    bool consistent = false;
    std::string detail;
};
LoopFactorization loop_factorization(const Quiver& q, int maxdim, int window);

// sum_e A_Q(e) Omega^sigma_e xi^e against A^sigma_Q.
CheckReport general_factorization_check(const Quiver& q, int maxdim, int window);

struct WittSplit {
    std::map<std::vector<int>, std::vector<CohmElement>> classes;
    bool forbidden_empty = true;   // no odd class at a symplectic node
    bool action_preserves = true;  // checked on the supplied probes
};
WittSplit witt_decompose(const Quiver& q, const std::vector<CohmElement>& xs,
                         const std::vector<CohaElement>& probes = {});

CheckReport check_freeness(const Quiver& q, int maxdim, int window);

// Q^u = Q + Q^op with the swap involution, nodes "a:<id>" and "b:<id>".
Quiver disjoint_double(const Quiver& base);
CheckReport check_disjoint_union(const Quiver& base, int maxdim, uint64_t seed, int instances);

}  // namespace hallforge
