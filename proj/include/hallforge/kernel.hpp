#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hallforge/poly.hpp"
#include "hallforge/symfun.hpp"

namespace hallforge {

// A rational function whose denominator is a product of linear forms.
struct RationalExpr {
    Poly num;
    std::vector<LinForm> den;
};

// Divides out the denominator factor by factor. Throws DivisionError when
// the quotient is not a polynomial.
Poly reduce(const RationalExpr& e);

// A signed variable: sign * x_var.
struct SVar {
    int var = 0;
    int sign = 1;
};

// Linear form ca*a + cb*b.
LinForm lin(SVar a, int ca, SVar b, int cb);
LinForm lin(SVar a, int ca);

// One term of a shuffle sum before compilation: f and g are pulled back
// along map_f / map_g and multiplied by scalar * prod(num) / prod(den).
struct KernelTerm {
    std::vector<Poly::VarImage> map_f, map_g;
    Q scalar = 1;
    std::vector<LinForm> num, den;
};

// Shuffle sum over a common denominator. Per term the numerator multiplier
// absorbs the missing denominator factors, so evaluation is a sum of
// products followed by one chain of exact divisions.
class KernelPlan {
public:
    KernelPlan(int nvars, int nf, int ng, std::vector<KernelTerm> terms);

    int nvars() const { return nvars_; }
    int term_count() const { return static_cast<int>(terms_.size()); }
    // polynomial degree added by the kernel
    int degree_shift() const { return degree_shift_; }
    const std::vector<LinForm>& denominator() const { return lcm_; }

    RationalExpr assemble(const Poly& f, const Poly& g) const;
    Poly apply(const Poly& f, const Poly& g) const { return reduce(assemble(f, g)); }

private:
    struct Compiled {
        std::vector<Poly::VarImage> map_f, map_g;
        Poly mult;
    };
    int nvars_ = 0, nf_ = 0, ng_ = 0;
    int degree_shift_ = 0;
    std::vector<Compiled> terms_;
    std::vector<LinForm> lcm_;
};

// Process-wide plan cache keyed by a caller-built string.
std::shared_ptr<const KernelPlan> cached_plan(const std::string& key,
                                              const std::function<KernelPlan()>& build);
void clear_plan_cache();

// Calls fn(s) for every tuple of shuffles, one per entry of sizes.
void for_each_shuffle_tuple(const std::vector<std::vector<int>>& sizes,
                            const std::function<void(const std::vector<Shuffle>&)>& fn);

// Worker count from HALLFORGE_THREADS (unset: hardware concurrency, 0: sequential).
int worker_count();
// Evaluates fn(0..n-1), possibly in parallel; results come back in index order.
template <class T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn);

// Incremental reduced row echelon form over Q.
class RowReducer {
public:
    explicit RowReducer(int ncols = 0) : ncols_(ncols) {}
    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    bool full() const { return rank() == ncols_; }
    // Returns true when v was independent of the stored rows.
    bool insert(std::vector<Q> v);
    // Eliminates all pivot columns from v.
    void reduce(std::vector<Q>& v) const;
    bool in_span(std::vector<Q> v) const;
    std::vector<int> pivots() const;
    std::vector<int> free_columns() const;

private:
    int ncols_;
    std::vector<std::vector<Q>> rows_;
    std::vector<int> piv_;
};

// Coordinates of invariant polynomials in one graded slice: the coefficient
// of each dominant monomial.
class SliceCoords {
public:
    SliceCoords() = default;
    SliceCoords(const BlockSpec& blocks, int degree);
    int size() const { return static_cast<int>(monos_.size()); }
    const std::vector<Mono>& monomials() const { return monos_; }
    std::vector<Q> coords(const Poly& p) const;
    // Orbit sum of the i-th dominant monomial (monomial-symmetric basis).
    Poly basis_poly(int i) const;
    int nvars() const { return nvars_; }

private:
    BlockSpec blocks_;
    int nvars_ = 0;
    std::vector<Mono> monos_;
    std::unordered_map<Mono, int, MonoHash> index_;
};

Poly orbit_poly(const BlockSpec& blocks, const Mono& m);

}  // namespace hallforge

#include "hallforge/kernel_impl.hpp"
