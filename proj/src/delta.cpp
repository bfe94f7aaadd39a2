#include "equires/delta.hpp"

namespace equires {

Ideal delta(const Ideal& I) {
    std::vector<Poly> gens(I.gens());
    for (const auto& g : I.gens())
        for (const auto& v : I.vars()) {
            Poly d = g.derivative(v);
            if (!d.is_zero()) gens.push_back(d);
        }
    return Ideal(I.vars(), I.m(), std::move(gens)).pruned();
}

Ideal delta_power(const Ideal& I, int i) {
    Ideal r(I);
    for (int k = 0; k < i; ++k) {
        if (r.is_unit(Level::Full)) return Ideal::unit(I.vars(), I.m());
        r = delta(r);
    }
    return r;
}

const Ideal& DeltaCache::get(int i) {
    while (static_cast<int>(ladder_.size()) <= i) ladder_.push_back(delta(ladder_.back()));
    return ladder_[static_cast<std::size_t>(i)];
}

Ideal sing_ideal(const Ideal& I, int b) {
    Ideal d = delta_power(I.fiber(), b - 1);
    return Ideal(I.vars(), 1, d.fiber_gb());
}

}  // namespace equires
