#include "equires/groebner.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace equires {

bool term_less(const Exponents& a, const Exponents& b, int elim_block) {
    if (elim_block <= 0) return grevlex_less(a, b);
    auto block_deg = [&](const Exponents& e, int from, int to) {
        int d = 0;
        for (int i = from; i < to; ++i) d += e[i];
        return d;
    };
    int n = static_cast<int>(a.size());
    // Dominant block: the first elim_block variables, compared grevlex-style.
    int da = block_deg(a, 0, elim_block), db = block_deg(b, 0, elim_block);
    if (da != db) return da < db;
    for (int i = elim_block - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] > b[i];
    da = block_deg(a, elim_block, n);
    db = block_deg(b, elim_block, n);
    if (da != db) return da < db;
    for (int i = n - 1; i >= elim_block; --i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

Exponents leading_exponents(const Poly& f, int elim_block) {
    const Exponents* best = nullptr;
    for (const auto& [e, c] : f.terms())
        if (!best || term_less(*best, e, elim_block)) best = &e;
    if (!best) throw std::logic_error("leading term of zero polynomial");
    return *best;
}

namespace {

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents lcm_exp(const Exponents& a, const Exponents& b) {
    Exponents e(a.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
    return e;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

Poly monomial(const std::vector<std::string>& vars, const Exponents& e, const Rat& c) {
    Poly p(vars, 1);
    p.add_term(e, ArtinScalar(1, c));
    return p;
}

}  // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& basis, int elim_block) {
    if (basis.empty()) return f;
    std::vector<Exponents> lts;
    lts.reserve(basis.size());
    for (const auto& g : basis) lts.push_back(leading_exponents(g, elim_block));

    Poly rem(f.vars(), 1);
    Poly work(f);
    while (!work.is_zero()) {
        Exponents le = leading_exponents(work, elim_block);
        Rat lc = work.terms().at(le).fiber();
        bool reduced = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!divides(lts[i], le)) continue;
            Exponents q(le);
            for (std::size_t k = 0; k < q.size(); ++k) q[k] -= lts[i][k];
            Rat factor = lc / basis[i].terms().at(lts[i]).fiber();
            work = work - monomial(f.vars(), q, factor) * basis[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            // Move the leading term to the remainder.
            Poly t = monomial(f.vars(), le, lc);
            rem = rem + t;
            work = work - t;
        }
    }
    return rem;
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, int elim_block) {
    std::vector<Poly> basis;
    for (const auto& g : gens) {
        if (g.m() != 1) throw std::invalid_argument("groebner_basis: coefficients must be over Q");
        if (!g.is_zero()) basis.push_back(g);
    }
    if (basis.empty()) return {};

    // Deterministic pair queue, normal selection strategy.
    auto pair_key = [&](std::size_t i, std::size_t j) {
        return lcm_exp(leading_exponents(basis[i], elim_block),
                       leading_exponents(basis[j], elim_block));
    };
    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_for(j);

    while (!pairs.empty()) {
        // Pick the pair with the smallest lcm under the order.
        auto best = pairs.begin();
        Exponents best_lcm = pair_key(best->first, best->second);
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            Exponents l = pair_key(it->first, it->second);
            if (term_less(l, best_lcm, elim_block)) {
                best = it;
                best_lcm = l;
            }
        }
        auto [i, j] = *best;
        pairs.erase(best);

        Exponents lti = leading_exponents(basis[i], elim_block);
        Exponents ltj = leading_exponents(basis[j], elim_block);
        if (coprime(lti, ltj)) continue;  // Buchberger's first criterion

        Exponents l = lcm_exp(lti, ltj);
        Exponents qi(l), qj(l);
        for (std::size_t k = 0; k < l.size(); ++k) {
            qi[k] -= lti[k];
            qj[k] -= ltj[k];
        }
        Poly spoly = monomial(basis[i].vars(), qi, Rat(1) / basis[i].terms().at(lti).fiber()) *
                         basis[i] -
                     monomial(basis[j].vars(), qj, Rat(1) / basis[j].terms().at(ltj).fiber()) *
                         basis[j];
        Poly r = normal_form(spoly, basis, elim_block);
        if (!r.is_zero()) {
            basis.push_back(r);
            push_pairs_for(basis.size() - 1);
        }
    }

    // Minimalize: drop elements whose leading term is divisible by another's.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Exponents lti = leading_exponents(basis[i], elim_block);
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            Exponents ltj = leading_exponents(basis[j], elim_block);
            if (divides(ltj, lti) && (ltj != lti || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // Reduce each element against the others and normalize to monic.
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = normal_form(minimal[i], others, elim_block);
        if (r.is_zero()) continue;
        Exponents le = leading_exponents(r, elim_block);
        reduced.push_back(r * (Rat(1) / r.terms().at(le).fiber()));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return term_less(leading_exponents(a, elim_block), leading_exponents(b, elim_block),
                         elim_block);
    });
    return reduced;
}

bool basis_contains_one(const std::vector<Poly>& basis) {
    for (const auto& g : basis)
        if (g.is_constant() && !g.is_zero()) return true;
    return false;
}

int variety_dimension(const std::vector<Poly>& basis) {
    if (basis_contains_one(basis)) return -1;
    if (basis.empty()) {
        throw std::invalid_argument("variety_dimension: ambient unknown for empty basis");
    }
    int n = static_cast<int>(basis[0].vars().size());
    std::vector<Exponents> lts;
    for (const auto& g : basis) lts.push_back(leading_exponents(g, 0));
    // Max size of a variable subset S such that no leading monomial is
    // supported entirely inside S.
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) ++size;
        if (size <= best) continue;
        bool independent = true;
        for (const auto& e : lts) {
            bool inside = true;
            for (int i = 0; i < n; ++i)
                if (e[i] > 0 && !(mask & (1u << i))) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

std::vector<Poly> eliminate(const std::vector<Poly>& basis, int elim_block) {
    std::vector<Poly> out;
    if (basis.empty()) return out;
    const auto& vars = basis[0].vars();
    std::vector<std::string> kept(vars.begin() + elim_block, vars.end());
    for (const auto& g : basis) {
        bool uses_front = false;
        for (const auto& [e, c] : g.terms())
            for (int i = 0; i < elim_block; ++i)
                if (e[i] > 0) uses_front = true;
        if (uses_front) continue;
        Poly h(kept, 1);
        for (const auto& [e, c] : g.terms())
            h.add_term(Exponents(e.begin() + elim_block, e.end()), c);
        out.push_back(h);
    }
    return out;
}

}  // namespace equires
