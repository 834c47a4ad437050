#pragma once

#include <functional>
#include <map>
#include <vector>

#include "hallforge/poly.hpp"

namespace hallforge {

using Partition = std::vector<int>;

// A block of variables x_{offset}..x_{offset+count-1}. GL blocks carry
// symmetric polynomials, BCD blocks polynomials symmetric and even in each
// variable.
struct Block {
    int node = 0;
    bool bcd = false;
    int offset = 0;
    int count = 0;
};
using BlockSpec = std::vector<Block>;

int block_nvars(const BlockSpec& b);

// Partitions of n with at most maxparts parts, largest first part first.
std::vector<Partition> partitions(int n, int maxparts);
Partition trim(Partition p);
// Number of partitions of n with at most maxparts parts.
long long partition_count(int n, int maxparts);

Poly complete_h(int k, const std::vector<int>& vars, int nvars);
Poly elementary_e(int k, const std::vector<int>& vars, int nvars);
// Jacobi-Trudi determinant in complete homogeneous polynomials.
Poly schur(const Partition& lambda, const std::vector<int>& vars, int nvars);
Poly monomial_sym(const Partition& lambda, const std::vector<int>& vars, int nvars);
std::vector<int> var_range(int offset, int count);

// Basis of the invariant slice of the given polynomial degree.
std::vector<Poly> weight_basis(const BlockSpec& blocks, int degree);
// Same slice, monomial symmetric products (the coordinate basis).
std::vector<Poly> monomial_basis(const BlockSpec& blocks, int degree);
// Dimension of the slice (Hilbert series coefficient).
long long slice_dimension(const BlockSpec& blocks, int degree);

// Dominant monomials of the slice: exponents weakly decreasing inside each
// block, even inside BCD blocks. They index coordinates of invariant polys.
std::vector<Mono> dominant_monomials(const BlockSpec& blocks, int degree);
bool is_dominant(const BlockSpec& blocks, const Mono& m);
bool is_invariant(const BlockSpec& blocks, const Poly& p);

// Shuffle enumeration. A shuffle of sizes (a_1..a_r) assigns to part k an
// increasing list of positions in {0..sum-1}.
using Shuffle = std::vector<std::vector<int>>;
void for_each_shuffle(const std::vector<int>& sizes, const std::function<void(const Shuffle&)>& fn);
std::vector<Shuffle> shuffles(const std::vector<int>& sizes);
long long multinomial(const std::vector<int>& sizes);

}  // namespace hallforge
