#include "hallforge/random.hpp"

#include "hallforge/kernel.hpp"

namespace hallforge {

Poly random_invariant(Lcg& rng, const BlockSpec& blocks, int p) {
    SliceCoords sc(blocks, p);
    Poly out(block_nvars(blocks));
    if (sc.size() == 0) return out;
    while (out.is_zero())
        for (int i = 0; i < sc.size(); ++i) {
            int c = rng.range(-3, 3);
            if (c != 0) out += sc.basis_poly(i) * Q(c);
        }
    return out;
}

}  // namespace hallforge
