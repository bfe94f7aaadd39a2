#include "equires/chart.hpp"

#include <algorithm>
#include <sstream>

namespace equires {

namespace {

// Split f = c*var + rest; returns the linear scalar coefficient if the pure
// linear term exists.
std::optional<ArtinScalar> linear_coeff(const Poly& f, const std::string& var) {
    int idx = f.var_index(var);
    Exponents e(f.vars().size(), 0);
    e[static_cast<std::size_t>(idx)] = 1;
    auto it = f.terms().find(e);
    if (it == f.terms().end()) return std::nullopt;
    return it->second;
}

}  // namespace

// Classify an E-equation as var - const; returns (var, constant value).
std::optional<std::pair<std::string, ArtinScalar>> as_var_minus_const(const Poly& f) {
    std::string var;
    ArtinScalar cst(f.m());
    ArtinScalar lin(f.m());
    for (const auto& [e, c] : f.terms()) {
        int d = total_degree(e);
        if (d == 0) {
            cst = c;
        } else if (d == 1) {
            if (!var.empty()) return std::nullopt;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] == 1) var = f.vars()[i];
            lin = c;
        } else {
            return std::nullopt;
        }
    }
    if (var.empty() || !lin.is_unit()) return std::nullopt;
    return std::make_pair(var, -(cst * lin.inverse()));
}

Poly apply_substitution(const Poly& p, const Substitution& s) {
    const Poly& repl = s.replacement;
    auto lc = linear_coeff(repl, s.var);
    if (!lc || !lc->is_unit())
        throw NotACoordinateChange("substitution for " + s.var +
                                   " lacks a unit linear coefficient");
    ArtinScalar cinv = lc->inverse();
    Poly v = Poly::variable(repl.vars(), repl.m(), s.var);
    Poly h = repl - v * *lc;  // repl = c*var + h
    // Solve repl = v_new for the old variable: var = (v_new - h)/c, iterating
    // to absorb nilpotent/higher-order self-references.
    Poly expr = (v - h) * cinv;
    for (int k = 0; k < repl.m() + 3; ++k) {
        Poly next = (v - h.substitute(s.var, expr)) * cinv;
        if (next == expr) break;
        expr = next;
    }
    // Exactness check: the new coordinate must evaluate back to itself.
    if (repl.substitute(s.var, expr) != v)
        throw NotACoordinateChange("substitution for " + s.var + " is not invertible");
    return p.substitute(s.var, expr);
}

Poly apply_substitutions(const Poly& p, const std::vector<Substitution>& subs) {
    Poly r(p);
    for (const auto& s : subs) r = apply_substitution(r, s);
    return r;
}

Ideal apply_substitutions(const Ideal& I, const std::vector<Substitution>& subs) {
    std::vector<Poly> gens;
    for (const auto& g : I.gens()) gens.push_back(apply_substitutions(g, subs));
    return Ideal(I.vars(), I.m(), std::move(gens));
}

const Chart& SPair::chart(const std::string& id) const {
    for (const auto& c : charts)
        if (c.id == id) return c;
    throw std::out_of_range("no chart " + id);
}

Chart& SPair::chart(const std::string& id) {
    for (auto& c : charts)
        if (c.id == id) return c;
    throw std::out_of_range("no chart " + id);
}

Ideal CenterComponent::ideal(const std::vector<std::string>& vars, int m) const {
    std::vector<Poly> gens;
    for (const auto& v : vanishing_vars) {
        const Substitution* found = nullptr;
        for (const auto& s : change)
            if (s.var == v) found = &s;
        gens.push_back(found ? found->replacement : Poly::variable(vars, m, v));
    }
    return Ideal(vars, m, std::move(gens));
}

bool CenterSpec::empty() const {
    for (const auto& [cid, comps] : by_chart)
        if (!comps.empty()) return false;
    return true;
}

int CenterSpec::codim() const {
    int best = 0;
    for (const auto& [cid, comps] : by_chart)
        for (const auto& c : comps)
            best = std::max(best, static_cast<int>(c.vanishing_vars.size()));
    return best;
}

std::string CenterSpec::describe() const {
    std::ostringstream os;
    bool first_chart = true;
    for (const auto& [cid, comps] : by_chart) {
        if (!first_chart) os << "; ";
        first_chart = false;
        os << cid << ": ";
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (i) os << " u ";
            os << "V(";
            for (std::size_t j = 0; j < comps[i].vanishing_vars.size(); ++j) {
                if (j) os << ",";
                const auto& v = comps[i].vanishing_vars[j];
                const Substitution* found = nullptr;
                for (const auto& s : comps[i].change)
                    if (s.var == v) found = &s;
                os << (found ? found->replacement.to_string() : v);
            }
            os << ")";
        }
    }
    return os.str();
}

PairDiagnostics validate_pair(const SPair& p) {
    PairDiagnostics d;
    for (const auto& c : p.charts) {
        std::vector<std::pair<std::string, std::string>> seen;  // (var, const-string)
        for (const auto& H : p.E) {
            if (!H.present_in(c.id)) continue;
            const Poly& eq = H.eq(c.id);
            auto vc = as_var_minus_const(eq);
            if (!vc) {
                if (!solve_hypersurface(eq)) {
                    // Not normalizable anywhere at once; accept it when it is
                    // globally smooth (unit fiber Jacobian ideal), since each
                    // point then admits a local normalization.
                    std::vector<Poly> jac{eq.fiber()};
                    for (const auto& v : c.vars) jac.push_back(eq.fiber().derivative(v));
                    if (!Ideal(c.vars, 1, jac).is_unit(Level::Fiber)) {
                        d.ok = false;
                        d.violations.push_back("chart " + c.id + ": E-member " + H.label +
                                               " is not normalizable to a coordinate");
                    }
                }
                continue;
            }
            std::string key = vc->second.fiber().get_str();
            for (const auto& [v2, k2] : seen) {
                if (v2 == vc->first && k2 == key) {
                    d.ok = false;
                    d.violations.push_back("chart " + c.id + ": duplicate hypersurface " +
                                           H.label);
                }
            }
            seen.emplace_back(vc->first, key);
        }
    }
    return d;
}

PairDiagnostics validate_center(const SPair& p, const CenterSpec& C) {
    PairDiagnostics d;
    for (const auto& [cid, comps] : C.by_chart) {
        const Chart& c = p.chart(cid);
        for (const auto& comp : comps) {
            Ideal IC = comp.ideal(c.vars, c.m);
            for (const auto& H : p.E) {
                if (!H.present_in(cid)) continue;
                Poly eq = H.eq(cid);
                Poly eq_changed;
                bool coordinate_change = true;
                try {
                    eq_changed = apply_substitutions(eq, comp.change);
                } catch (const NotACoordinateChange& ex) {
                    // Principal codim-1 components carry a non-invertible
                    // change; fall through to the fiber disjointness check.
                    if (comp.vanishing_vars.size() != 1) {
                        d.ok = false;
                        d.violations.push_back("chart " + cid + ": " + ex.what());
                        continue;
                    }
                    coordinate_change = false;
                }
                std::optional<std::pair<std::string, ArtinScalar>> vc;
                if (coordinate_change) vc = as_var_minus_const(eq_changed);
                if (vc) {
                    bool in_vanishing =
                        std::find(comp.vanishing_vars.begin(), comp.vanishing_vars.end(),
                                  vc->first) != comp.vanishing_vars.end();
                    if (in_vanishing && !vc->second.is_zero()) {
                        // Disjoint translate of a vanishing coordinate: fine.
                        continue;
                    }
                    continue;  // coordinate form: normal crossings holds
                }
                // Not coordinate after the change: must be disjoint from the
                // center at the fiber level.
                Ideal sum = IC + Ideal(c.vars, c.m, {eq});
                if (!basis_contains_one(sum.fiber_gb())) {
                    d.ok = false;
                    d.violations.push_back("chart " + cid + ": E-member " + H.label +
                                           " fails normal crossings with the center");
                }
            }
        }
    }
    return d;
}

std::pair<SPair, BlowupRecord> blowup(const SPair& p, const CenterSpec& C, int step,
                                      const std::string& exc_label) {
    BlowupRecord rec;
    rec.step = step;
    rec.exc_label = exc_label;

    SPair out;
    Hypersurface exc;
    exc.label = exc_label;

    for (const auto& c : p.charts) {
        auto it = C.by_chart.find(c.id);
        if (it == C.by_chart.end() || it->second.empty()) {
            out.charts.push_back(c);
            rec.kept_charts.push_back(c.id);
            continue;
        }
        const auto& comps = it->second;
        std::vector<const CenterComponent*> big;
        for (const auto& comp : comps) {
            if (comp.vanishing_vars.size() <= 1) {
                // Codim-1 component: ambient untouched; divisor becomes the
                // exceptional in this chart.
                rec.trivial_codim1 = true;
                Poly eq = comp.ideal(c.vars, c.m).gens().at(0);
                exc.eqs[c.id] = eq;
            } else {
                big.push_back(&comp);
            }
        }
        if (big.empty()) {
            out.charts.push_back(c);
            rec.kept_charts.push_back(c.id);
            continue;
        }
        if (big.size() > 1)
            throw PermissibilityError(
                "multiple codim>=2 center components in one chart are unsupported");
        const CenterComponent& comp = *big.front();
        rec.dropped_charts.push_back(c.id);
        for (const auto& keep : comp.vanishing_vars) {
            BlowupChart bc;
            bc.parent_id = c.id;
            bc.kept_var = keep;
            bc.id = c.id + "." + std::to_string(step) + "." + keep;
            bc.center_change = comp.change;
            for (const auto& v : c.vars) {
                bool vanishing = std::find(comp.vanishing_vars.begin(),
                                           comp.vanishing_vars.end(),
                                           v) != comp.vanishing_vars.end();
                Poly image = Poly::variable(c.vars, c.m, v);
                if (vanishing && v != keep)
                    image = image * Poly::variable(c.vars, c.m, keep);
                bc.var_images[v] = image;
            }
            Chart child;
            child.id = bc.id;
            child.vars = c.vars;
            child.m = c.m;
            child.parent = c.id;
            child.birth_step = step;
            child.kept_var = keep;
            child.birth_vanishing = comp.vanishing_vars;
            out.charts.push_back(child);
            exc.eqs[bc.id] = Poly::variable(c.vars, c.m, keep);
            rec.new_charts.push_back(bc);
        }
    }

    // Strict transforms of the old E-members.
    for (const auto& H : p.E) {
        Hypersurface H2;
        H2.label = H.label;
        for (const auto& cid : rec.kept_charts) {
            if (!H.present_in(cid)) continue;
            Poly eq = H.eq(cid);
            // A codim-1 blow-up may consume the divisor equal to the center.
            auto excit = exc.eqs.find(cid);
            if (excit != exc.eqs.end()) {
                auto q1 = eq.exact_divide(excit->second);
                auto q2 = excit->second.exact_divide(eq);
                if (q1 && q2) continue;  // associate: consumed by the exceptional
            }
            H2.eqs[cid] = eq;
        }
        for (const auto& bc : rec.new_charts) {
            if (!H.present_in(bc.parent_id)) continue;
            const Chart& child = out.chart(bc.id);
            Poly eq = transform_poly(H.eq(bc.parent_id), bc, child.vars);
            Poly w = Poly::variable(child.vars, child.m, bc.kept_var);
            while (true) {
                auto q = eq.exact_divide(w);
                if (!q) break;
                eq = *q;
            }
            if (eq.is_constant() && eq.constant_term().is_unit()) continue;  // absent
            H2.eqs[bc.id] = eq;
        }
        out.E.push_back(std::move(H2));
    }
    out.E.push_back(std::move(exc));
    return {std::move(out), std::move(rec)};
}

Poly transform_poly(const Poly& p, const BlowupChart& bc,
                    const std::vector<std::string>& new_vars) {
    Poly q = apply_substitutions(p, bc.center_change);
    std::vector<Poly> images;
    images.reserve(q.vars().size());
    for (const auto& v : q.vars()) images.push_back(bc.var_images.at(v).with_vars(new_vars));
    return q.map_vars(new_vars, images);
}

Ideal transform_ideal(const Ideal& I, const BlowupChart& bc,
                      const std::vector<std::string>& new_vars) {
    std::vector<Poly> gens;
    for (const auto& g : I.gens()) gens.push_back(transform_poly(g, bc, new_vars));
    return Ideal(new_vars, I.m(), std::move(gens));
}

CenterSpec retruncate_center(const CenterSpec& C, int m2) {
    CenterSpec out;
    for (const auto& [cid, comps] : C.by_chart) {
        for (const auto& comp : comps) {
            CenterComponent c2;
            for (const auto& s : comp.change)
                c2.change.push_back({s.var, s.replacement.retruncate(m2)});
            c2.vanishing_vars = comp.vanishing_vars;
            out.by_chart[cid].push_back(std::move(c2));
        }
    }
    return out;
}

std::optional<Substitution> solve_hypersurface(const Poly& f,
                                               const std::vector<std::string>& avoid) {
    if (f.is_zero() || f.is_constant()) return std::nullopt;
    for (const auto& v : f.vars()) {
        if (std::find(avoid.begin(), avoid.end(), v) != avoid.end()) continue;
        auto lc = linear_coeff(f, v);
        if (!lc || !lc->is_unit()) continue;
        Substitution s{v, f};
        try {
            // Exactness is validated inside apply_substitution.
            apply_substitution(Poly::variable(f.vars(), f.m(), v), s);
        } catch (const NotACoordinateChange&) {
            continue;
        }
        return s;
    }
    return std::nullopt;
}

std::optional<CenterComponent> normalize_center_ideal(const Ideal& D,
                                                      const std::vector<std::string>& avoid) {
    CenterComponent comp;
    Ideal work = D.pruned();
    std::vector<std::string> used(avoid);
    while (!work.is_zero()) {
        bool solved = false;
        for (const auto& g : work.gens()) {
            auto s = solve_hypersurface(g, used);
            if (!s) continue;
            comp.change.push_back(*s);
            comp.vanishing_vars.push_back(s->var);
            used.push_back(s->var);
            // Rewrite the remaining generators in the new coordinates and set
            // the solved coordinate to zero.
            std::vector<Poly> rest;
            for (const auto& h : work.gens()) {
                if (&h == &g) continue;
                Poly h2 = apply_substitution(h, *s).substitute(
                    s->var, Poly(h.vars(), h.m()));
                if (!h2.is_zero()) rest.push_back(h2);
            }
            work = Ideal(D.vars(), D.m(), std::move(rest)).pruned();
            solved = true;
            break;
        }
        if (!solved) return std::nullopt;
    }
    if (comp.vanishing_vars.empty()) return std::nullopt;
    // The component must reproduce D exactly over A.
    if (!comp.ideal(D.vars(), D.m()).equals(D, Level::Full)) return std::nullopt;
    std::sort(comp.vanishing_vars.begin(), comp.vanishing_vars.end());
    return comp;
}

}  // namespace equires
