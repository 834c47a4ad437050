#pragma once

#include <cstdint>

#include "hallforge/symfun.hpp"

namespace hallforge {

// 64-bit LCG (Knuth's MMIX constants); the high bits are used for draws.
class Lcg {
public:
    explicit Lcg(uint64_t seed) : x_(seed) {}
    uint64_t next() {
        x_ = x_ * 6364136223846793005ull + 1442695040888963407ull;
        return x_;
    }
    // uniform in [lo, hi]
    int range(int lo, int hi) { return lo + static_cast<int>((next() >> 33) % static_cast<uint64_t>(hi - lo + 1)); }

private:
    uint64_t x_;
};

// Random element of the degree-p slice of the invariants of `blocks`, small
// integer coefficients in the monomial-symmetric basis.
Poly random_invariant(Lcg& rng, const BlockSpec& blocks, int p);

}  // namespace hallforge
