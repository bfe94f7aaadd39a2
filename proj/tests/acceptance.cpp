// Acceptance gate: one PASS/FAIL line per criterion.  Criteria 1-5 replay the
// worked examples, 6 is the randomized identity suite, 7 the structural suite
// over every driver run, 8 the frozen step-count corpus, 9 the
// well-definedness check across adapted-hypersurface choices.
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "equires/contact.hpp"
#include "equires/delta.hpp"
#include "equires/driver.hpp"

using namespace equires;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XZ{"x", "z"};
const std::vector<std::string> X{"x"};

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << idx << ". " << name;
    if (!ok && !detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!ok) ++g_failures;
}

SPair ambient(const std::vector<std::string>& vars, int m,
              const std::vector<std::pair<std::string, std::string>>& divisors = {}) {
    SPair p;
    Chart c;
    c.id = "0";
    c.vars = vars;
    c.m = m;
    p.charts.push_back(c);
    for (const auto& [label, eq] : divisors) {
        Hypersurface H;
        H.label = label;
        H.eqs.emplace("0", Poly::parse(eq, vars, m));
        p.E.push_back(H);
    }
    return p;
}

CenterSpec origin(const std::vector<std::string>& vanishing,
                  const std::vector<Substitution>& change = {}) {
    CenterSpec C;
    CenterComponent comp;
    comp.change = change;
    comp.vanishing_vars = vanishing;
    C.by_chart["0"].push_back(comp);
    return C;
}

// ---------------------------------------------------------------------------
// Criteria 1-5: worked-example replays.

void criterion1() {
    Ideal I = Ideal::parse({"eps*x+y^2+x^3"}, XY, 2);
    std::vector<ArtinScalar> o{ArtinScalar(2), ArtinScalar(2)};
    auto ord0 = I.order_at_point(o, Level::Fiber);
    auto nu = I.order_in_vars(XY, Level::Full);
    bool ok = ord0 && *ord0 == 2 && nu && *nu == 1;
    std::ostringstream os;
    os << "order0=" << ord0.value_or(-1) << " nu=" << nu.value_or(-1);
    report(1, "ex4_2: fiber order 2, nu(I,C) = 1", ok, os.str());
}

void criterion2() {
    BasicObject B =
        BasicObject::make(ambient(X, 2), Ideal::parse({"x^2", "eps*x"}, X, 2), 2);
    EquiresReport rep = equiresolve(B);
    bool ok = rep.e == 0 && rep.ell == 1 &&
              rep.failure_clause.find("no A-permissible lift") != std::string::npos;
    report(2, "ex_nohay: e = 0, ell = 1, 'no A-permissible lift'", ok,
           "e=" + std::to_string(rep.e) + " ell=" + std::to_string(rep.ell) +
               " clause='" + rep.failure_clause + "'");
}

void criterion3() {
    BasicObject B = BasicObject::make(
        ambient(XZ, 2), Ideal::parse({"z^2+eps*x^2", "z^3+x^3"}, XZ, 2), 2);
    Ideal D1 = delta_power(B.chart_data("0").ideal, 1);
    bool delta_eq = D1.equals(Ideal::parse({"z", "eps*x", "x^2"}, XZ, 2), Level::Full);
    auto Z = find_adapted_hypersurface(B, "0");
    bool ok = delta_eq && Z && Z->inductive();
    if (ok) {
        std::map<std::string, AdaptedHypersurface> adapted{{"0", *Z}};
        BasicObject BZ = inductive_object(B, adapted, false);
        ok = BZ.b() == 2 &&
             BZ.chart_data("0").ideal.equals(Ideal::parse({"eps*x^2", "x^3"}, X, 2),
                                             Level::Full);
        CenterSpec C = origin({"x", "z"});
        auto CZ = restrict_center_to_Z(C, adapted);
        ok = ok && CZ.has_value();
        if (ok) {
            StrongVerdict v = is_strongly_permissible(B, BZ, C, *CZ);
            ok = v.ambient.ok && !v.inductive.ok;
        }
    }
    report(3, "ex6_9: Delta^1 = (z, eps*x, x^2); B_Z = ((eps*x^2, x^3), 2); "
              "V(x,z) B-perm, not B_Z-perm", ok);
}

void criterion4() {
    BasicObject B = BasicObject::make(ambient(XZ, 2),
                                      Ideal::parse({"x^5+eps*x^2*z+z^4"}, XZ, 2), 4);
    auto Z = find_adapted_hypersurface(B, "0");
    bool ok = Z && Z->inductive();
    if (ok) {
        std::map<std::string, AdaptedHypersurface> adapted{{"0", *Z}};
        BasicObject BZ = inductive_object(B, adapted, false);
        ok = BZ.b() == 24 &&
             BZ.chart_data("0").ideal.equals(Ideal::parse({"x^30"}, X, 2), Level::Full);
        StrongVerdict v =
            is_strongly_permissible(B, BZ, origin({"x", "z"}), origin({"x"}));
        ok = ok && v.inductive.ok && !v.ambient.ok && v.ambient.nu_full == 3 &&
             v.ambient.nu_fiber == 4;
    }
    report(4, "ex6_10: B_Z = ((x^30), 24); V(x) B_Z-perm, not B-perm (nu 3 vs 4)", ok);
}

void criterion5() {
    BasicObject B =
        BasicObject::make(ambient(XY, 2), Ideal::parse({"y^2", "x^3"}, XY, 2), 2);
    Ideal I = B.chart_data("0").ideal;
    bool ok =
        delta_power(I, 1).equals(Ideal::parse({"y", "x^2"}, XY, 2), Level::Full) &&
        homogenized_ideal(I, 2).equals(Ideal::parse({"y^2", "x^2*y", "x^3"}, XY, 2),
                                       Level::Full);
    auto Z = find_adapted_hypersurface(B, "0");
    ok = ok && Z && Z->inductive();
    if (ok) {
        std::map<std::string, AdaptedHypersurface> adapted{{"0", *Z}};
        BasicObject BZ = inductive_object(B, adapted, true);
        ok = BZ.chart_data("0").ideal.equals(Ideal::parse({"x^3"}, X, 2), Level::Full);
        StrongVerdict v0 =
            is_strongly_permissible(B, BZ, origin({"x", "y"}), origin({"x"}));
        CenterSpec C1 = origin({"x", "y"}, {{"x", Poly::parse("x-eps", XY, 2)}});
        auto CZ1 = restrict_center_to_Z(C1, adapted);
        StrongVerdict v1 = is_strongly_permissible(B, BZ, C1, *CZ1);
        ok = ok && v0.strong && !v1.strong;
    }
    EquiresReport rep = equiresolve(B);
    ok = ok && rep.e == 1 && rep.ell == 1 && rep.equisolvable &&
         !rep.sequence.empty() && rep.sequence.back().sing_empty();
    report(5, "ex8_6: Delta = (y,x^2); H = (y^2,x^2y,x^3); C(H)|_Z = (x^3); "
              "lambda = 0 only; e = ell = 1; Sing empty", ok);
}

// ---------------------------------------------------------------------------
// Criterion 6: randomized exact identities (>= 30 instances each).

struct Rng {
    std::mt19937 gen{20260826u};
    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }
};

// A random nonzero polynomial in x, y over Q[eps]/(eps^m), total degree <= 4.
Poly random_poly(Rng& rng, int m, int min_deg = 0) {
    while (true) {
        Poly p = Poly::constant(XY, m, Rat(0));
        int terms = rng.uniform(1, 4);
        for (int t = 0; t < terms; ++t) {
            int a = rng.uniform(0, 4), b = rng.uniform(0, 4 - a);
            if (a + b < min_deg) continue;
            int c = rng.uniform(-3, 3);
            if (c == 0) c = 1;
            int k = (m > 1) ? rng.uniform(0, m - 1) : 0;
            Poly term = Poly::constant(XY, m, Rat(c));
            for (int i = 0; i < a; ++i) term = term * Poly::variable(XY, m, "x");
            for (int i = 0; i < b; ++i) term = term * Poly::variable(XY, m, "y");
            for (int i = 0; i < k; ++i) term = term * Poly::parse("eps", XY, m);
            p = p + term;
        }
        if (!p.is_zero()) return p;
    }
}

// Random ideal whose fiber order at the origin is exactly b (one eps-free
// monomial of degree b, everything else of degree >= b): V(x,y) is then an
// A-permissible center.
Ideal random_order_b_ideal(Rng& rng, int m, int b) {
    std::vector<Poly> gens;
    int n = rng.uniform(1, 2);
    for (int i = 0; i < n; ++i) {
        int a = rng.uniform(0, b);
        Poly lead = Poly::constant(XY, m, Rat(rng.uniform(1, 3)));
        for (int k = 0; k < a; ++k) lead = lead * Poly::variable(XY, m, "x");
        for (int k = 0; k < b - a; ++k) lead = lead * Poly::variable(XY, m, "y");
        gens.push_back(lead + random_poly(rng, m, b + 1));
    }
    return Ideal(XY, m, std::move(gens));
}

void criterion6() {
    Rng rng;
    bool ok = true;
    std::string detail;

    // (a) Lemma 7.3: Delta^{b-1}(H(I,b)) = Delta^{b-1}(I).
    for (int i = 0; ok && i < 30; ++i) {
        int m = rng.uniform(1, 3), b = rng.uniform(2, 3);
        Ideal I(XY, m, {random_poly(rng, m), random_poly(rng, m)});
        if (!delta_power(homogenized_ideal(I, b), b - 1)
                 .equals(delta_power(I, b - 1), Level::Full)) {
            ok = false;
            detail = "Delta-top identity, instance " + std::to_string(i);
        }
    }

    // (b) nu(I,C) >= b  <=>  Delta^{b-1}(I/S) contained in I(C), C = V(x,y).
    Ideal IC(XY, 3, {Poly::variable(XY, 3, "x"), Poly::variable(XY, 3, "y")});
    for (int i = 0; ok && i < 30; ++i) {
        int m = rng.uniform(1, 3), b = rng.uniform(1, 3);
        Ideal I(XY, m, {random_poly(rng, m)});
        auto nu = I.order_in_vars(XY, Level::Full);
        bool lhs = nu && *nu >= b;
        Ideal ICm(XY, m, {Poly::variable(XY, m, "x"), Poly::variable(XY, m, "y")});
        bool rhs = ICm.contains(delta_power(I, b - 1), Level::Full);
        if (lhs != rhs) {
            ok = false;
            detail = "Prop-3.9 equivalence, instance " + std::to_string(i);
        }
    }

    // (c) fiber commutes with transform at V(x, y).
    for (int i = 0; ok && i < 30; ++i) {
        int m = rng.uniform(2, 3), b = rng.uniform(1, 2);
        BasicObject B = BasicObject::make(ambient(XY, m), random_order_b_ideal(rng, m, b), b);
        CenterSpec C = origin({"x", "y"});
        if (!B.is_permissible_center(C).ok) continue;
        BasicObject TA = B.transform(C, "e").first.fiber();
        BasicObject TF = B.fiber().transform(retruncate_center(C, 1), "e").first;
        for (const auto& c : TA.pair().charts)
            if (!TA.chart_data(c.id).ideal.equals(TF.chart_data(c.id).ideal,
                                                  Level::Fiber)) {
                ok = false;
                detail = "fiber/transform commutation, instance " + std::to_string(i);
            }
    }

    // (d) fiber commutes with Delta.
    for (int i = 0; ok && i < 30; ++i) {
        int m = rng.uniform(2, 3), k = rng.uniform(1, 3);
        Ideal I(XY, m, {random_poly(rng, m), random_poly(rng, m)});
        if (!delta_power(I, k).fiber().equals(delta_power(I.fiber(), k), Level::Fiber)) {
            ok = false;
            detail = "fiber/Delta commutation, instance " + std::to_string(i);
        }
    }

    // (e) blow-up commutes with base change to the fiber (total transforms).
    for (int i = 0; ok && i < 30; ++i) {
        int m = rng.uniform(2, 3);
        Ideal I(XY, m, {random_poly(rng, m, 1)});
        SPair p = ambient(XY, m);
        CenterSpec C = origin({"x", "y"});
        auto [p1, rec] = blowup(p, C, 0, "e");
        auto [p1f, recf] = blowup(ambient(XY, 1), retruncate_center(C, 1), 0, "e");
        for (std::size_t k = 0; k < rec.new_charts.size(); ++k) {
            Ideal full = transform_ideal(I, rec.new_charts[k], XY).fiber();
            Ideal fib = transform_ideal(I.fiber(), recf.new_charts[k], XY);
            if (!(rec.new_charts[k].id == recf.new_charts[k].id &&
                  full.equals(fib, Level::Fiber))) {
                ok = false;
                detail = "blow-up base change, instance " + std::to_string(i);
            }
        }
    }

    report(6, "property suite A: five exact identities on 30 random instances each",
           ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 7: structural properties on every driver run of the corpus.

struct CorpusEntry {
    BasicObject object;
    std::string name;
};

std::vector<CorpusEntry> golden_corpus() {
    std::vector<CorpusEntry> out;
    auto add = [&](BasicObject B, const std::string& n) {
        out.push_back({std::move(B), n});
    };
    add(BasicObject::make(ambient(X, 1), Ideal::parse({"x^2"}, X, 1), 2), "c1");
    add(BasicObject::make(ambient(XY, 1), Ideal::parse({"y^2", "x^3"}, XY, 1), 2), "c2");
    add(BasicObject::make(ambient(XY, 1), Ideal::parse({"y^2+x^3"}, XY, 1), 2), "c3");
    add(BasicObject::make(ambient(XY, 1), Ideal::parse({"x*y"}, XY, 1), 2), "c4");
    add(BasicObject::make(
            ambient(XY, 1, {{"H1", "x"}, {"H2", "y"}, {"H3", "x-1"}}),
            Ideal::parse({"x^2*y^3*(x-1)"}, XY, 1), 2),
        "c5");
    add(BasicObject::make(ambient(X, 1), Ideal::parse({"x^3"}, X, 1), 2), "c6");
    add(BasicObject::make(ambient(X, 1), Ideal::parse({"x^3"}, X, 1), 3), "c7");
    add(BasicObject::make(ambient(XY, 1), Ideal::parse({"x^2+y^2"}, XY, 1), 2), "c8");
    add(BasicObject::make(ambient(XY, 1, {{"H1", "x"}, {"H2", "y"}}),
                          Ideal::parse({"x^2*y^2"}, XY, 1), 2),
        "c9");
    add(BasicObject::make(ambient(X, 1), Ideal::parse({"x^4"}, X, 1), 2), "c10");
    return out;
}

void criterion7() {
    bool ok = true;
    std::string detail;
    int sigma_checked = 0;

    for (const auto& entry : golden_corpus()) {
        ResolutionTree T;
        try {
            T = resolve_fiber(entry.object);
        } catch (const std::exception& ex) {
            ok = false;
            detail = entry.name + ": " + ex.what();
            break;
        }

        // max(t) non-increasing, and Gamma strictly decreasing inside the
        // monomial phase (the driver records violations as warnings).
        if (!T.warnings.empty()) {
            ok = false;
            detail = entry.name + ": " + T.warnings.front();
        }
        for (std::size_t j = 1; j < T.steps.size(); ++j)
            if (T.steps[j - 1].t < T.steps[j].t) {
                ok = false;
                detail = entry.name + ": max(t) increased at step " + std::to_string(j);
            }

        // rho-permissibility: a t-phase prefix followed by monomial steps only.
        bool monomial_seen = false;
        for (const auto& s : T.steps) {
            if (s.kind == StepKind::Monomial) monomial_seen = true;
            else if (monomial_seen) {
                ok = false;
                detail = entry.name + ": t-step after the monomial phase";
            }
        }

        // nice => good: on inductive steps the permissible center has
        // nu(I, C) exactly b.
        for (std::size_t j = 0; j < T.steps.size(); ++j) {
            if (T.steps[j].kind != StepKind::TInductive) continue;
            PermVerdict v = T.objects[j].is_permissible_center(T.steps[j].center);
            if (!(v.ok && v.nu_fiber == T.objects[j].b())) {
                ok = false;
                detail = entry.name + ": nice object not good at step " + std::to_string(j);
            }
        }

        // Prop 5.2 sigma identity where the image-center chain is defined:
        // chart-preserving runs (every center chart exists at every earlier
        // step, so D_i is the center itself) whose chain is nested in the
        // earlier centers (each blow-up then lowers nu along D_i by b).
        for (std::size_t r = 0; r < T.steps.size(); ++r) {
            const CenterSpec& C = T.steps[r].center;
            // With a nonempty input E the controlled ideal carries a monomial
            // factor that sigma sees and omega does not; the identity is
            // stated for sequences starting from E = empty.
            bool defined = entry.object.pair().E.empty();
            for (std::size_t i = 0; defined && i <= r; ++i)
                for (const auto& [cid, comps] : C.by_chart) {
                    (void)comps;
                    bool found = false;
                    for (const auto& c : T.objects[i].pair().charts)
                        if (c.id == cid) found = true;
                    if (!found) defined = false;
                }
            for (std::size_t i = 0; defined && i < r; ++i)
                for (const auto& [cid, comps] : C.by_chart) {
                    auto it = T.steps[i].center.by_chart.find(cid);
                    if (it == T.steps[i].center.by_chart.end()) {
                        defined = false;
                        break;
                    }
                    const auto& vars = T.objects[i].pair().chart(cid).vars;
                    Ideal ID = Ideal::unit(vars, 1);
                    for (const auto& comp : comps) ID = ID * comp.ideal(vars, 1);
                    Ideal ICi = Ideal::unit(vars, 1);
                    for (const auto& comp : it->second) ICi = ICi * comp.ideal(vars, 1);
                    // D_i inside C_i as subvarieties: I(C_i) contained in I(D_i).
                    if (!ID.contains(ICi, Level::Fiber)) defined = false;
                }
            if (!defined) continue;
            auto wr = omega_of_center(T.objects[r], C);
            auto sr = sigma_of_center(T.objects[r], C);
            if (!wr || !sr) continue;
            Rat rhs = *sr + Rat(static_cast<int>(r));
            bool chain_ok = true;
            for (std::size_t i = 0; i < r; ++i) {
                auto si = sigma_of_center(T.objects[i], C);
                if (!si) {
                    chain_ok = false;
                    break;
                }
                rhs -= *si;
            }
            if (!chain_ok) continue;
            ++sigma_checked;
            if (*wr != rhs) {
                ok = false;
                detail = entry.name + ": sigma identity fails at step " + std::to_string(r);
            }
        }
    }
    if (sigma_checked == 0) {
        ok = false;
        detail = "sigma identity never applicable";
    }

    // Theorem 1.1(i) truncation equality and e <= ell on equiresolution runs.
    std::vector<BasicObject> eqruns;
    eqruns.push_back(
        BasicObject::make(ambient(XY, 2), Ideal::parse({"y^2", "x^3"}, XY, 2), 2));
    eqruns.push_back(
        BasicObject::make(ambient(X, 2), Ideal::parse({"x^2", "eps*x"}, X, 2), 2));
    eqruns.push_back(
        BasicObject::make(ambient(X, 3), Ideal::parse({"x^4"}, X, 3), 2));
    for (const auto& B : eqruns) {
        EquiresReport rep = equiresolve(B);
        if (rep.e > rep.ell) {
            ok = false;
            detail = "e > ell";
        }
        for (int j = 0; j <= rep.e && j < static_cast<int>(rep.sequence.size()); ++j) {
            BasicObject fib = rep.sequence[static_cast<std::size_t>(j)].fiber();
            const BasicObject& ref = rep.fiber_tree.objects[static_cast<std::size_t>(j)];
            for (const auto& c : fib.pair().charts)
                if (!fib.chart_data(c.id).ideal.equals(ref.chart_data(c.id).ideal,
                                                       Level::Fiber)) {
                    ok = false;
                    detail = "Theorem 1.1(i) truncation equality fails at step " +
                             std::to_string(j);
                }
        }
    }

    report(7, "property suite B: structural invariants on every driver run", ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 8: the frozen 10-instance fiber-resolution corpus.

void criterion8() {
    const int expected_ell[] = {1, 1, 1, 1, 3, 1, 1, 1, 2, 2};
    bool ok = true;
    std::string detail;
    auto corpus = golden_corpus();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        try {
            ResolutionTree T = resolve_fiber(corpus[i].object);
            if (!T.resolved || T.ell() != expected_ell[i]) {
                ok = false;
                detail = corpus[i].name + ": ell=" + std::to_string(T.ell()) +
                         " expected " + std::to_string(expected_ell[i]);
            }
        } catch (const std::exception& ex) {
            ok = false;
            detail = corpus[i].name + ": " + ex.what();
        }
    }
    report(8, "fiber resolution corpus: 10 instances match the recorded step counts",
           ok, detail);
}

// ---------------------------------------------------------------------------
// Criterion 9: well-definedness across the adapted-hypersurface choice.

void criterion9() {
    BasicObject B =
        BasicObject::make(ambient(XY, 1), Ideal::parse({"x^2+y^2"}, XY, 1), 2);
    OmegaData om = max_omega(B);
    TData td = max_t(B, om, {});
    BasicObject B2 = b_doubleprime(B, om, td, {});

    bool ok = true;
    std::string detail;
    std::vector<Ideal> centers;
    for (const std::string& zv : {"x", "y"}) {
        AdaptedHypersurface Z;
        Z.chart = "0";
        Z.eq = Poly::variable(XY, 1, zv);
        Z.witness = Substitution{zv, Z.eq};
        Z.zvar = zv;
        Z.a1 = Z.a2 = Z.a3 = true;
        std::map<std::string, AdaptedHypersurface> adapted{{"0", Z}};
        try {
            BasicObject BZ = inductive_object(B2, adapted, true);
            OmegaData omz = max_omega(BZ);
            TData tdz = max_t(BZ, omz, {});
            BranchResult inner = derive_center(BZ, omz, tdz, {});
            CenterSpec C = lift_center_from_Z(inner.center, adapted);
            if (!B.is_permissible_center(C).ok) {
                ok = false;
                detail = "lifted center not permissible for Z = V(" + zv + ")";
            }
            centers.push_back(C.by_chart.at("0").front().ideal(XY, 1));
        } catch (const std::exception& ex) {
            ok = false;
            detail = ex.what();
        }
    }
    if (ok && centers.size() == 2 && !centers[0].equals(centers[1], Level::Fiber)) {
        ok = false;
        detail = "downstream centers differ across hypersurface choices";
    }
    report(9, "well-definedness: distinct adapted hypersurfaces give the same center",
           ok, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures == 0) {
        std::cout << "ACCEPTANCE: all 9 criteria pass\n";
        return 0;
    }
    std::cout << "ACCEPTANCE: " << g_failures << " criterion(s) failing\n";
    return 1;
}
