// Relative derivative ideals Delta^i(I/S).  Derivatives are taken in the
// chart variables only; eps lives in the coefficient ring and is never
// differentiated.
#pragma once

#include <vector>

#include "equires/ideal.hpp"

namespace equires {

// Delta(I/S): generators of I plus all first partials, pruned.
Ideal delta(const Ideal& I);

// i-fold iteration of delta.
Ideal delta_power(const Ideal& I, int i);

// Increasing ladder Delta^0(I/S), ..., Delta^{top}(I/S) with shared pruning.
class DeltaCache {
public:
    explicit DeltaCache(Ideal base) : ladder_{std::move(base)} {}
    const Ideal& get(int i);

private:
    std::vector<Ideal> ladder_;
};

// Fiber ideal whose vanishing locus is Sing of (I, b): Delta^{b-1} of the
// fiber ideal, as a reduced Groebner presentation.
Ideal sing_ideal(const Ideal& I, int b);

}  // namespace equires
