#include "equires/ideal.hpp"

#include <algorithm>

namespace equires {

Ideal::Ideal(std::vector<std::string> vars, int m, std::vector<Poly> gens)
    : vars_(std::move(vars)), m_(m) {
    for (auto& g : gens)
        if (!g.is_zero()) gens_.push_back(std::move(g));
}

Ideal Ideal::zero(const std::vector<std::string>& vars, int m) { return Ideal(vars, m, {}); }

Ideal Ideal::unit(const std::vector<std::string>& vars, int m) {
    return Ideal(vars, m, {Poly::constant(vars, m, Rat(1))});
}

Ideal Ideal::parse(const std::vector<std::string>& gens, const std::vector<std::string>& vars,
                   int m) {
    std::vector<Poly> ps;
    ps.reserve(gens.size());
    for (const auto& s : gens) ps.push_back(Poly::parse(s, vars, m));
    return Ideal(vars, m, std::move(ps));
}

bool Ideal::fiber_is_zero() const {
    for (const auto& g : gens_)
        if (!g.fiber().is_zero()) return false;
    return true;
}

bool Ideal::is_unit(Level level) const {
    if (gens_.empty()) return false;
    return contains(Poly::constant(vars_, m_, Rat(1)), level);
}

Ideal Ideal::fiber() const {
    std::vector<Poly> fg;
    for (const auto& g : gens_) fg.push_back(g.fiber());
    return Ideal(vars_, 1, std::move(fg));
}

Ideal Ideal::retruncate(int m2) const {
    std::vector<Poly> fg;
    for (const auto& g : gens_) fg.push_back(g.retruncate(m2));
    return Ideal(vars_, m2, std::move(fg));
}

const std::vector<Poly>& Ideal::fiber_gb() const {
    if (!fiber_gb_) {
        std::vector<Poly> fg;
        for (const auto& g : gens_) fg.push_back(g.fiber());
        fiber_gb_ = std::make_shared<std::vector<Poly>>(groebner_basis(fg));
    }
    return *fiber_gb_;
}

const std::vector<Poly>& Ideal::full_gb() const {
    if (!full_gb_) {
        std::vector<Poly> eg;
        for (const auto& g : gens_) eg.push_back(g.adjoin_eps());
        std::vector<std::string> evars(vars_);
        evars.push_back("eps");
        Poly eps_m = Poly::variable(evars, 1, "eps").pow(m_);
        eg.push_back(eps_m);
        full_gb_ = std::make_shared<std::vector<Poly>>(groebner_basis(eg));
    }
    return *full_gb_;
}

bool Ideal::contains(const Poly& f, Level level) const {
    if (level == Level::Fiber) {
        Poly ff = f.fiber();
        if (ff.is_zero()) return true;
        return normal_form(ff, fiber_gb()).is_zero();
    }
    Poly fe = f.adjoin_eps();
    if (fe.is_zero()) return true;
    return normal_form(fe, full_gb()).is_zero();
}

bool Ideal::contains(const Ideal& other, Level level) const {
    for (const auto& g : other.gens_)
        if (!contains(g, level)) return false;
    return true;
}

bool Ideal::equals(const Ideal& other, Level level) const {
    return contains(other, level) && other.contains(*this, level);
}

bool Ideal::radical_contains(const Poly& f) const {
    Poly ff = f.fiber();
    if (ff.is_zero()) return true;
    std::vector<std::string> evars(vars_);
    evars.push_back("_t");
    std::vector<Poly> gens;
    for (const auto& g : gens_) gens.push_back(g.fiber().with_vars(evars));
    Poly t = Poly::variable(evars, 1, "_t");
    gens.push_back(Poly::constant(evars, 1, Rat(1)) - t * ff.with_vars(evars));
    return basis_contains_one(groebner_basis(gens));
}

Ideal Ideal::operator+(const Ideal& other) const {
    std::vector<Poly> gens(gens_);
    gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
    return Ideal(vars_, m_, std::move(gens));
}

Ideal Ideal::operator*(const Ideal& other) const {
    std::vector<Poly> gens;
    for (const auto& a : gens_)
        for (const auto& b : other.gens_) gens.push_back(a * b);
    return Ideal(vars_, m_, std::move(gens));
}

Ideal Ideal::power(int k) const {
    if (k == 0) return unit(vars_, m_);
    Ideal r(*this);
    for (int i = 1; i < k; ++i) r = r * *this;
    return r;
}

Ideal Ideal::pruned() const {
    // Prefer keeping simple generators: sort by (degree, term count, text).
    std::vector<Poly> sorted(gens_);
    std::stable_sort(sorted.begin(), sorted.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size();
        return a.to_string() < b.to_string();
    });
    std::vector<Poly> kept;
    for (const auto& g : sorted) {
        Ideal others(vars_, m_, kept);
        if (!kept.empty() && others.contains(g, Level::Full)) continue;
        kept.push_back(g);
    }
    // Second pass: a generator may be implied by later-kept ones.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < kept.size() && kept.size() > 1; ++i) {
            std::vector<Poly> others;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            if (Ideal(vars_, m_, others).contains(kept[i], Level::Full)) {
                kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return Ideal(vars_, m_, std::move(kept));
}

Ideal Ideal::exact_divide(const Poly& g) const {
    std::vector<Poly> out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        auto q = gens_[i].exact_divide(g);
        if (!q) throw NotDivisible(i);
        out.push_back(*q);
    }
    return Ideal(vars_, m_, std::move(out));
}

int Ideal::max_divisions(const Poly& g, int cap) const {
    if (gens_.empty()) return cap;
    Ideal work(*this);
    int count = 0;
    while (count < cap) {
        std::vector<Poly> out;
        bool ok = true;
        for (const auto& gen : work.gens_) {
            auto q = gen.exact_divide(g);
            if (!q) {
                ok = false;
                break;
            }
            out.push_back(*q);
        }
        if (!ok) break;
        work = Ideal(vars_, m_, std::move(out));
        ++count;
    }
    return count;
}

Ideal Ideal::substitute(const std::string& v, const Poly& value) const {
    std::vector<Poly> out;
    for (const auto& g : gens_) out.push_back(g.substitute(v, value));
    return Ideal(vars_, m_, std::move(out));
}

Ideal Ideal::restrict_to_hyperplane(const std::string& v) const {
    Ideal sub = substitute(v, Poly(vars_, m_));
    int idx = static_cast<int>(
        std::find(vars_.begin(), vars_.end(), v) - vars_.begin());
    std::vector<std::string> new_vars;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (static_cast<int>(i) != idx) new_vars.push_back(vars_[i]);
    std::vector<Poly> out;
    for (const auto& g : sub.gens()) {
        Poly h(new_vars, m_);
        for (const auto& [e, c] : g.terms()) {
            Exponents e2;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (static_cast<int>(i) != idx) e2.push_back(e[i]);
            h.add_term(e2, c);
        }
        out.push_back(h);
    }
    return Ideal(new_vars, m_, std::move(out));
}

Ideal Ideal::with_vars(const std::vector<std::string>& new_vars) const {
    std::vector<Poly> out;
    for (const auto& g : gens_) out.push_back(g.with_vars(new_vars));
    return Ideal(new_vars, m_, std::move(out));
}

std::optional<int> Ideal::order_at_point(const std::vector<ArtinScalar>& point,
                                         Level level) const {
    std::optional<int> best;
    for (const auto& g : gens_) {
        Poly t(g);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (point[i].is_zero()) continue;
            Poly shifted = Poly::variable(vars_, m_, vars_[i]) +
                           Poly::constant(vars_, point[i]);
            t = t.substitute(vars_[i], shifted);
        }
        if (level == Level::Fiber) t = t.fiber();
        auto o = t.order();
        if (o && (!best || *o < *best)) best = o;
    }
    return best;
}

std::optional<int> Ideal::order_in_vars(const std::vector<std::string>& subset,
                                        Level level) const {
    std::optional<int> best;
    for (const auto& g : gens_) {
        Poly t = (level == Level::Fiber) ? g.fiber() : g;
        auto o = t.order_in(subset);
        if (o && (!best || *o < *best)) best = o;
    }
    return best;
}

std::vector<std::string> Ideal::gen_strings() const {
    std::vector<std::string> out;
    for (const auto& g : gens_) out.push_back(g.to_string());
    return out;
}

}  // namespace equires
