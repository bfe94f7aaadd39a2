// Maximal contact: coefficient ideals, homogenized ideals, adapted and
// inductive hypersurfaces, the inductive object, and strong permissibility.
#include "equires/contact.hpp"

#include <algorithm>

namespace equires {

namespace {

int factorial(int b) {
    if (b < 1 || b > 12) throw std::invalid_argument("coefficient ideal: b out of range");
    int f = 1;
    for (int i = 2; i <= b; ++i) f *= i;
    return f;
}

std::vector<std::string> without(const std::vector<std::string>& vars, const std::string& v) {
    std::vector<std::string> out;
    for (const auto& w : vars)
        if (w != v) out.push_back(w);
    return out;
}

// Variables already carrying an E-member in the chart (in current
// coordinates); the adapted hypersurface must not be solved onto one of them.
std::vector<std::string> e_carrier_vars(const BasicObject& B, const std::string& cid) {
    std::vector<std::string> avoid;
    for (const auto& H : B.pair().E) {
        if (!H.present_in(cid)) continue;
        if (auto vc = as_var_minus_const(H.eq(cid))) avoid.push_back(vc->first);
    }
    return avoid;
}

// Fill in witness and the A1-A3 flags for a candidate equation; nullopt when
// the equation cannot be normalized to a coordinate at all.
std::optional<AdaptedHypersurface> evaluate_candidate(const BasicObject& B,
                                                      const std::string& cid, const Poly& eq,
                                                      const Ideal& delta_top) {
    auto s = solve_hypersurface(eq, e_carrier_vars(B, cid));
    if (!s) s = solve_hypersurface(eq);  // keep the candidate; A2 will fail
    if (!s) return std::nullopt;

    AdaptedHypersurface Z;
    Z.chart = cid;
    Z.eq = eq;
    Z.witness = *s;
    Z.zvar = s->var;

    Z.a1 = delta_top.contains(eq, Level::Full);

    Z.a2 = true;
    for (const auto& H : B.pair().E) {
        if (!H.present_in(cid)) continue;
        Poly changed = apply_substitution(H.eq(cid), Z.witness);
        auto vc = as_var_minus_const(changed);
        if (!vc || vc->first == Z.zvar) Z.a2 = false;
    }

    // A3: Z shares no component with Sing(B); since dim Z = d-1 >= dim Sing,
    // that happens exactly when Z is contained in Sing, i.e. the singular
    // ideal restricts to zero on Z.
    Ideal sg = B.sing(cid);
    if (sg.is_unit(Level::Fiber)) {
        Z.a3 = true;
    } else {
        Substitution w1{Z.witness.var, Z.witness.replacement.retruncate(1)};
        Ideal on_z = apply_substitutions(sg, {w1}).restrict_to_hyperplane(Z.zvar);
        bool all_zero = true;
        for (const auto& g : on_z.gens())
            if (!g.is_zero()) all_zero = false;
        Z.a3 = !all_zero;
    }
    return Z;
}

// Drop a variable the polynomial does not use (with_vars only extends).
Poly drop_unused_var(const Poly& p, const std::string& v) {
    std::vector<std::string> target = without(p.vars(), v);
    std::vector<Poly> images;
    for (const auto& w : p.vars())
        images.push_back(w == v ? Poly(target, p.m())
                                : Poly::variable(target, p.m(), w));
    return p.map_vars(target, images);
}

// Whether f and g cut out the same hypersurface, up to the normal forms the
// center grammar produces (unit scalars, var-minus-const classification).
bool same_hypersurface(const Poly& f, const Poly& g) {
    if ((f - g).is_zero()) return true;
    auto a = as_var_minus_const(f);
    auto b = as_var_minus_const(g);
    return a && b && a->first == b->first && a->second == b->second;
}

// Restriction of a present E-member equation to Z, in the Z coordinates.
std::optional<Poly> restrict_eq(const Poly& eq, const AdaptedHypersurface& Z,
                                const std::vector<std::string>& z_vars, int m) {
    Poly changed = apply_substitution(eq, Z.witness);
    Ideal tmp(changed.vars(), m, {changed});
    Poly r = tmp.restrict_to_hyperplane(Z.zvar).gens().front().with_vars(z_vars);
    if (r.is_constant()) return std::nullopt;  // Z misses (or equals) the divisor
    return r;
}

}  // namespace

Ideal coefficient_ideal(const Ideal& I, int b) {
    int fact = factorial(b);
    DeltaCache cache(I);
    Ideal acc = Ideal::zero(I.vars(), I.m());
    for (int i = 0; i < b; ++i) acc = acc + cache.get(i).power(fact / (b - i));
    return acc.pruned();
}

Ideal coefficient_ideal_on(const Ideal& I, int b, const Substitution& witness,
                           const std::string& zvar) {
    int fact = factorial(b);
    DeltaCache cache(I);
    Ideal acc = Ideal::zero(without(I.vars(), zvar), I.m());
    for (int i = 0; i < b; ++i) {
        Ideal ri = apply_substitutions(cache.get(i), {witness}).restrict_to_hyperplane(zvar);
        acc = acc + ri.power(fact / (b - i));
    }
    return acc.pruned();
}

Ideal homogenized_ideal(const Ideal& I, int b) {
    DeltaCache cache(I);
    Ideal T = cache.get(b - 1);
    Ideal acc = I;
    Ideal Tp = T;
    for (int i = 1; i < b; ++i) {
        acc = acc + cache.get(i) * Tp;
        Tp = Tp * T;
    }
    return acc.pruned();
}

std::optional<AdaptedHypersurface> find_adapted_hypersurface(const BasicObject& B,
                                                             const std::string& cid) {
    const ChartData& cd = B.chart_data(cid);
    Ideal D = delta_power(cd.ideal, B.b() - 1).pruned();
    std::optional<AdaptedHypersurface> best;
    auto rank = [](const AdaptedHypersurface& z) {
        return (z.a1 ? 4 : 0) + (z.a2 ? 2 : 0) + (z.a3 ? 1 : 0);
    };
    for (const auto& g : D.gens()) {
        auto cand = evaluate_candidate(B, cid, g, D);
        if (!cand) continue;
        if (!best || rank(*cand) > rank(*best)) best = cand;
        if (best->inductive()) break;
    }
    return best;
}

BasicObject inductive_object(const BasicObject& B,
                             const std::map<std::string, AdaptedHypersurface>& adapted,
                             bool use_homogenized) {
    if (adapted.empty()) throw std::invalid_argument("inductive_object: no adapted charts");
    int b = B.b();
    int b_z = factorial(b);

    SPair zp;
    std::map<std::string, ChartData> data;
    for (const auto& [cid, Z] : adapted) {
        const Chart& c = B.pair().chart(cid);
        const ChartData& cd = B.chart_data(cid);

        Chart zc = c;
        zc.vars = without(c.vars, Z.zvar);
        zp.charts.push_back(zc);

        Ideal src = use_homogenized ? homogenized_ideal(cd.ideal, b) : cd.ideal;
        Ideal cz = coefficient_ideal_on(src, b, Z.witness, Z.zvar);
        bool nonzero = false;
        for (const auto& g : cz.gens())
            if (!g.is_zero()) nonzero = true;
        if (!nonzero)
            throw A3Breach("coefficient ideal vanishes identically on Z in chart " + cid);

        ChartData zd;
        zd.ideal = cz.with_vars(zc.vars);
        zd.proper = zd.ideal;
        data.emplace(cid, std::move(zd));
    }

    for (const auto& H : B.pair().E) {
        Hypersurface HZ;
        HZ.label = H.label;
        for (const auto& [cid, Z] : adapted) {
            if (!H.present_in(cid)) continue;
            const Chart& zc = zp.chart(cid);
            if (auto r = restrict_eq(H.eq(cid), Z, zc.vars, zc.m)) HZ.eqs.emplace(cid, *r);
        }
        if (!HZ.eqs.empty()) zp.E.push_back(std::move(HZ));
    }

    // Extract exceptional exponents of the restricted E-members, as in
    // BasicObject::make.
    for (auto& [cid, zd] : data) {
        for (const auto& H : zp.E) {
            if (!H.present_in(cid)) continue;
            const Poly& eq = H.eq(cid);
            int a = zd.proper.max_divisions(eq);
            for (int k = 0; k < a; ++k) zd.proper = zd.proper.exact_divide(eq);
            zd.exponents[H.label] = a;
        }
    }
    return BasicObject::from_charts(std::move(zp), std::move(data), b_z, 0);
}

std::optional<CenterSpec> restrict_center_to_Z(
    const CenterSpec& C, const std::map<std::string, AdaptedHypersurface>& adapted) {
    CenterSpec out;
    for (const auto& [cid, comps] : C.by_chart) {
        auto it = adapted.find(cid);
        if (it == adapted.end()) return std::nullopt;
        const AdaptedHypersurface& Z = it->second;
        std::vector<CenterComponent> zcomps;
        for (const auto& comp : comps) {
            if (std::find(comp.vanishing_vars.begin(), comp.vanishing_vars.end(), Z.zvar) ==
                comp.vanishing_vars.end())
                return std::nullopt;
            // The component's equation for zvar must be the hypersurface Z.
            const Poly& wrep = Z.witness.replacement;  // full chart vars
            Poly have = Poly::variable(wrep.vars(), wrep.m(), Z.zvar);
            for (const auto& s : comp.change)
                if (s.var == Z.zvar) have = s.replacement.with_vars(wrep.vars());
            if (!same_hypersurface(have, wrep)) return std::nullopt;

            CenterComponent zc;
            zc.vanishing_vars = without(comp.vanishing_vars, Z.zvar);
            for (const auto& s : comp.change) {
                if (s.var == Z.zvar) continue;
                Poly r = s.replacement.with_vars(wrep.vars());
                if (r.degree_in(Z.zvar) > 0) return std::nullopt;
                zc.change.push_back({s.var, drop_unused_var(r, Z.zvar)});
            }
            zcomps.push_back(std::move(zc));
        }
        out.by_chart.emplace(cid, std::move(zcomps));
    }
    return out;
}

CenterSpec lift_center_from_Z(const CenterSpec& CZ,
                              const std::map<std::string, AdaptedHypersurface>& adapted) {
    CenterSpec out;
    for (const auto& [cid, comps] : CZ.by_chart) {
        const AdaptedHypersurface& Z = adapted.at(cid);
        const std::vector<std::string>& full_vars = Z.witness.replacement.vars();
        std::vector<CenterComponent> acomps;
        for (const auto& comp : comps) {
            CenterComponent ac;
            bool trivial_witness =
                (Z.witness.replacement -
                 Poly::variable(full_vars, Z.witness.replacement.m(), Z.zvar))
                    .is_zero();
            if (!trivial_witness) ac.change.push_back(Z.witness);
            for (const auto& s : comp.change)
                ac.change.push_back({s.var, s.replacement.with_vars(full_vars)});
            ac.vanishing_vars = comp.vanishing_vars;
            ac.vanishing_vars.push_back(Z.zvar);
            acomps.push_back(std::move(ac));
        }
        out.by_chart.emplace(cid, std::move(acomps));
    }
    return out;
}

StrongVerdict is_strongly_permissible(const BasicObject& B, const BasicObject& BZ,
                                      const CenterSpec& C, const CenterSpec& CZ) {
    StrongVerdict v;
    v.ambient = B.is_permissible_center(C);
    v.inductive = BZ.is_permissible_center(CZ);
    v.strong = v.ambient.ok && v.inductive.ok;
    return v;
}

std::map<std::string, AdaptedHypersurface> strict_transform_adapted(
    const std::map<std::string, AdaptedHypersurface>& adapted, const BlowupRecord& rec,
    const BasicObject& B1) {
    std::map<std::string, AdaptedHypersurface> out;
    int b = B1.b();

    auto reevaluate = [&](const std::string& cid, const Poly& eq) {
        Ideal D = delta_power(B1.chart_data(cid).ideal, b - 1).pruned();
        auto z = evaluate_candidate(B1, cid, eq, D);
        if (!z || !z->a1)
            throw InvariantBreach(
                "strict transform of the adapted hypersurface lost A1 in chart " + cid);
        return *z;
    };

    for (const auto& cid : rec.kept_charts) {
        auto it = adapted.find(cid);
        if (it != adapted.end()) out.emplace(cid, reevaluate(cid, it->second.eq));
    }
    for (const auto& bc : rec.new_charts) {
        auto it = adapted.find(bc.parent_id);
        if (it == adapted.end()) continue;
        const Chart& c = B1.pair().chart(bc.id);
        Poly eq1 = transform_poly(it->second.eq, bc, c.vars);
        Poly w = Poly::variable(c.vars, c.m, bc.kept_var);
        // Strict transform: divide out the exceptional coordinate.
        for (auto q = eq1.exact_divide(w); q; q = eq1.exact_divide(w)) eq1 = *q;
        if (eq1.is_constant()) continue;  // hypersurface missed by this chart
        out.emplace(bc.id, reevaluate(bc.id, eq1));
    }
    return out;
}

}  // namespace equires
