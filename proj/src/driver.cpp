// The VW resolution driver over the fiber, the equiresolution conditions E_j
// over A, principalization, and embedded resolution.
#include "equires/driver.hpp"

#include <algorithm>
#include <sstream>

namespace equires {

namespace {

// A principal divisor component V(f) for equations not normalizable to a
// coordinate (the change is non-invertible; downstream code treats it by
// direct division).
std::optional<CenterComponent> principal_divisor(const Ideal& D) {
    Ideal Dp = D.pruned();
    std::vector<Poly> gens;
    for (const auto& g : Dp.gens())
        if (!g.is_zero()) gens.push_back(g);
    if (gens.size() != 1) return std::nullopt;
    Poly f = gens.front();
    if (f.is_constant()) return std::nullopt;
    std::string v;
    for (const auto& w : f.vars())
        if (f.degree_in(w) > 0) {
            v = w;
            break;
        }
    if (v.empty()) return std::nullopt;
    CenterComponent comp;
    comp.vanishing_vars = {v};
    comp.change = {{v, f}};
    return comp;
}

std::vector<std::string> all_labels(const BasicObject& B) {
    std::vector<std::string> out;
    for (const auto& H : B.pair().E) out.push_back(H.label);
    return out;
}

// Product ideal of the center components in a chart, at the fiber level.
Ideal center_fiber_ideal(const std::vector<CenterComponent>& comps,
                         const std::vector<std::string>& vars) {
    Ideal J = Ideal::unit(vars, 1);
    for (const auto& comp : comps) J = J * comp.ideal(vars, 1).fiber();
    return J;
}

bool centers_fiber_match(const CenterSpec& CA, const CenterSpec& CF, const SPair& pair) {
    if (CA.by_chart.size() != CF.by_chart.size()) return false;
    for (const auto& [cid, comps] : CA.by_chart) {
        auto it = CF.by_chart.find(cid);
        if (it == CF.by_chart.end()) return false;
        const auto& vars = pair.chart(cid).vars;
        Ideal a = center_fiber_ideal(comps, vars);
        Ideal f = center_fiber_ideal(it->second, vars);
        if (!a.equals(f, Level::Fiber)) return false;
    }
    return true;
}

}  // namespace

std::string to_string(StepKind k) {
    switch (k) {
        case StepKind::TCodim1: return "t-case-codim1";
        case StepKind::TInductive: return "t-case-inductive";
        case StepKind::Monomial: return "monomial";
        case StepKind::CarryB3: return "carryover-b3";
    }
    return "?";
}

BranchResult derive_center(const BasicObject& B, const OmegaData& om, const TData& td,
                           const std::vector<std::string>& e_minus, int depth) {
    if (depth > 4) throw AlgorithmStuck("recursion depth exhausted");
    BranchResult br;

    if (om.max_omega == Rat(0)) {
        MonomialAnalysis ma;
        try {
            ma = analyze_monomial(B);
        } catch (const NotMonomial& ex) {
            throw AlgorithmStuck(std::string("premonomial not monomial: ") + ex.what());
        }
        if (!ma.monomial)
            throw AlgorithmStuck(
                "premonomial not monomial: canonical center not B-permissible");
        br.kind = StepKind::Monomial;
        br.center = ma.canonical;
        br.gamma = ma.max_gamma;
        br.trace.push_back("Gamma = " + ma.max_gamma.to_string());
        return br;
    }

    BasicObject B2;
    try {
        B2 = b_doubleprime(B, om, td, e_minus);
    } catch (const OutOfDomain& ex) {
        throw AlgorithmStuck(std::string("amenable refinement fails: ") + ex.what());
    }
    int b2 = B2.b();
    int d = B.pair().dim();

    // Direct route: normalize D = Delta^{b''-1}(I''/S) on every chart
    // meeting Max(t); valid when all pieces are coordinate or principal
    // divisors (codim 1, or the d = 1 base case).
    CenterSpec direct;
    bool direct_ok = true;
    bool any = false;
    for (const auto& [cid, loc] : td.locus) {
        if (loc.is_unit(Level::Fiber)) continue;
        Ideal D = delta_power(B2.chart_data(cid).ideal, b2 - 1).pruned();
        if (D.is_unit(Level::Full)) continue;
        auto comp = normalize_center_ideal(D);
        if (comp && d > 1 && comp->vanishing_vars.size() != 1) {
            direct_ok = false;
            break;
        }
        if (!comp) comp = principal_divisor(D);
        if (!comp) {
            direct_ok = false;
            break;
        }
        direct.by_chart[cid].push_back(*comp);
        any = true;
    }
    if (direct_ok && any) {
        br.kind = StepKind::TCodim1;
        br.center = direct;
        br.trace.push_back("derivative ideal normalized on " +
                           std::to_string(direct.by_chart.size()) + " chart(s)");
        return br;
    }
    if (d <= 1)
        throw AlgorithmStuck(
            "no A-permissible lift: the derivative ideal is not a coordinate center");

    // Inductive route on the charts meeting Max(t).
    std::map<std::string, AdaptedHypersurface> adapted;
    for (const auto& [cid, loc] : td.locus) {
        if (loc.is_unit(Level::Fiber)) continue;
        auto Z = find_adapted_hypersurface(B2, cid);
        if (!Z || !Z->inductive())
            throw AlgorithmStuck("no adapted hypersurface in chart " + cid);
        adapted.emplace(cid, *Z);
    }
    if (adapted.empty()) throw AlgorithmStuck("Max(t) locus empty in every chart");

    BasicObject BZ = inductive_object(B2, adapted, /*use_homogenized=*/true);
    OmegaData omz = max_omega(BZ);
    if (omz.sing_empty) throw AlgorithmStuck("inductive object has empty Sing");
    TData tdz = max_t(BZ, omz, all_labels(BZ));
    BranchResult inner = derive_center(BZ, omz, tdz, all_labels(BZ), depth + 1);

    br.kind = StepKind::TInductive;
    br.center = lift_center_from_Z(inner.center, adapted);
    br.inner_object = BZ;
    br.inner_center = inner.center;
    br.trace.push_back("inductive via Z on " + std::to_string(adapted.size()) +
                       " chart(s); inner " + to_string(inner.kind));
    for (const auto& line : inner.trace) br.trace.push_back("  " + line);
    return br;
}

ResolutionTree resolve_fiber(const BasicObject& B0, int max_steps) {
    if (B0.pair().dim() > 3) throw BadInput("ambient dimension guard (<= 3)");
    ResolutionTree T;
    SequenceState st(B0);
    std::optional<std::pair<Rat, int>> prev_t;
    std::optional<GammaValue> prev_gamma;

    for (int j = 0; j <= max_steps; ++j) {
        const StepInfo& info = st.current();
        T.objects.push_back(info.object);
        if (info.object.sing_empty()) {
            T.resolved = true;
            break;
        }
        if (j == max_steps) break;

        BranchResult br = derive_center(info.object, info.omega, info.t, info.e_minus);

        auto tv = info.t.value();
        if (prev_t && *prev_t < tv)
            T.warnings.push_back("max(t) increased at step " + std::to_string(j));
        if (br.kind == StepKind::Monomial && prev_gamma && br.gamma &&
            !(*br.gamma < *prev_gamma))
            T.warnings.push_back("Gamma did not decrease at step " + std::to_string(j));

        ResolutionStep step;
        step.center = br.center;
        step.kind = br.kind;
        step.max_omega = info.omega.max_omega;
        step.t = tv;
        step.gamma = br.gamma;
        step.e_minus = info.e_minus;
        step.trace = br.trace;
        step.exc_label = "exc" + std::to_string(j);
        T.steps.push_back(step);

        st.push(br.center, step.exc_label);
        prev_t = tv;
        prev_gamma = (br.kind == StepKind::Monomial) ? br.gamma : std::nullopt;
    }
    if (!T.resolved)
        throw AlgorithmStuck("not resolved within " + std::to_string(max_steps) + " steps");
    return T;
}

EjDecision check_condition_Ej(const BasicObject& Bj, const ResolutionStep& fiber_step) {
    EjDecision dec;
    OmegaData om = max_omega(Bj);
    if (om.sing_empty) {
        dec.clause = "Sing(B_j) empty while the fiber sequence continues";
        return dec;
    }
    TData td = max_t(Bj, om, fiber_step.e_minus);

    BranchResult br;
    try {
        br = derive_center(Bj, om, td, fiber_step.e_minus);
    } catch (const AlgorithmStuck& ex) {
        dec.clause = ex.what();
        return dec;
    }

    if (br.kind == StepKind::TInductive) {
        StrongVerdict sv =
            is_strongly_permissible(Bj, *br.inner_object, br.center, *br.inner_center);
        if (!sv.strong) {
            dec.clause = "B_Z center not strongly permissible";
            return dec;
        }
    } else {
        PermVerdict pv = Bj.is_permissible_center(br.center);
        if (!pv.ok) {
            dec.clause = "no A-permissible lift: center not B-permissible over A";
            return dec;
        }
    }

    if (!centers_fiber_match(retruncate_center(br.center, 1), fiber_step.center,
                             Bj.pair())) {
        dec.clause = "center does not lift the fiber center";
        return dec;
    }
    dec.valid = true;
    dec.center = br.center;
    return dec;
}

EquiresReport equiresolve(const BasicObject& B, int max_steps) {
    EquiresReport rep;
    rep.fiber_tree = resolve_fiber(B.fiber(), max_steps);
    rep.ell = rep.fiber_tree.ell();

    BasicObject cur = B;
    rep.sequence.push_back(cur);
    for (int j = 0; j < rep.ell; ++j) {
        EjDecision dec = check_condition_Ej(cur, rep.fiber_tree.steps[static_cast<std::size_t>(j)]);
        if (!dec.valid) {
            rep.failure_clause = dec.clause;
            break;
        }
        rep.centers.push_back(dec.center);
        auto [next, rec] =
            cur.transform(dec.center, rep.fiber_tree.steps[static_cast<std::size_t>(j)].exc_label);
        (void)rec;
        cur = std::move(next);
        rep.sequence.push_back(cur);
        rep.e = j + 1;
    }
    rep.equisolvable = (rep.e == rep.ell);
    return rep;
}

EquiresReport principalize(const IdTriple& T, int max_steps) {
    BasicObject B = BasicObject::make(T.pair, T.ideal, 1);
    {
        bool mono0 = true;
        for (const auto& [cid, cd] : B.data())
            if (!cd.proper.is_unit(Level::Full)) mono0 = false;
        if (mono0) {
            EquiresReport rep;
            rep.e = rep.ell = 0;
            rep.equisolvable = true;
            rep.fiber_tree.resolved = true;
            rep.fiber_tree.objects.push_back(B.fiber());
            rep.notes.push_back("terminal: controlled transform is an exceptional monomial");
            return rep;
        }
    }
    EquiresReport rep = equiresolve(B, max_steps);
    if (rep.equisolvable) {
        bool mono = true;
        for (const auto& [cid, cd] : rep.sequence.back().data())
            if (!cd.proper.is_unit(Level::Full)) mono = false;
        rep.notes.push_back(mono
                                ? "terminal: controlled transform is an exceptional monomial"
                                : "terminal check failed: proper transform is not the unit");
    }
    return rep;
}

EmbeddedReport resolve_embedded(const Ideal& X_ideal, const SPair& W, int max_steps) {
    EmbeddedReport rep;
    if (W.charts.size() != 1) throw BadInput("embedded input must be a single chart");
    const auto& vars = W.charts.front().vars;
    int d = W.dim();

    Ideal X0 = X_ideal.fiber().pruned();
    if (basis_contains_one(X0.fiber_gb())) throw BadInput("empty fiber variety");
    if (X0.gens().size() == 1) {
        // Principal: reduced iff the singular locus of f has codim >= 2.
        const Poly& f = X0.gens().front();
        std::vector<Poly> jac{f};
        for (const auto& v : vars) jac.push_back(f.derivative(v));
        rep.fiber_ok = variety_dimension(Ideal(vars, 1, jac).fiber_gb()) <= d - 2;
    } else {
        rep.fiber_ok = variety_dimension(X0.fiber_gb()) == 0;
    }
    if (!rep.fiber_ok) throw BadInput("fiber not reduced/equidimensional at desk scale");

    BasicObject B = BasicObject::make(W, X_ideal, 1);
    rep.eq = equiresolve(B, max_steps);

    // eta: first fiber step where the strict transform of X^(0) is a union
    // of components of the chosen center.
    const ResolutionTree& ft = rep.eq.fiber_tree;
    for (int j = 0; j < ft.ell(); ++j) {
        const BasicObject& Bj = ft.objects[static_cast<std::size_t>(j)];
        bool alive = false, contained = true;
        for (const auto& [cid, cd] : Bj.data()) {
            Ideal prop = cd.proper.fiber();
            if (prop.is_unit(Level::Fiber)) continue;
            alive = true;
            auto it = ft.steps[static_cast<std::size_t>(j)].center.by_chart.find(cid);
            if (it == ft.steps[static_cast<std::size_t>(j)].center.by_chart.end()) {
                contained = false;
                break;
            }
            Ideal J = center_fiber_ideal(it->second, Bj.pair().chart(cid).vars);
            for (const auto& g : J.gens())
                if (!prop.radical_contains(g)) contained = false;
            if (!contained) break;
        }
        if (alive && contained) {
            rep.eta = j;
            break;
        }
    }
    if (rep.eta < 0) {
        rep.notes.push_back("eta not detected along the fiber resolution");
        return rep;
    }
    rep.success = rep.eq.e >= rep.eta + 1;
    std::size_t level = std::min<std::size_t>(static_cast<std::size_t>(rep.eta) + 1,
                                              ft.objects.size() - 1);
    rep.snc = validate_pair(ft.objects[level].pair()).ok;
    return rep;
}

}  // namespace equires
