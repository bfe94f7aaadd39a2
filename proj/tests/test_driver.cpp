// Oracle tests for the resolution driver: the hand-derived fiber-resolution
// corpus (step counts, kinds, and centers frozen in advance), equiresolution
// over A, principalization, and embedded resolution.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "equires/driver.hpp"

using namespace equires;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> X{"x"};

Poly P(const std::string& s, const std::vector<std::string>& vars, int m) {
    return Poly::parse(s, vars, m);
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
        H.eqs.emplace("0", P(eq, vars, m));
        p.E.push_back(H);
    }
    return p;
}

std::vector<StepKind> kinds(const ResolutionTree& T) {
    std::vector<StepKind> out;
    for (const auto& s : T.steps) out.push_back(s.kind);
    return out;
}

// Vanishing variables of the unique component of the step's center in the
// given chart (empty when the chart carries no component).
std::vector<std::string> center_vars(const ResolutionStep& s, const std::string& cid = "0") {
    auto it = s.center.by_chart.find(cid);
    if (it == s.center.by_chart.end() || it->second.empty()) return {};
    return it->second.front().vanishing_vars;
}

}  // namespace

TEST_CASE("corpus 1-4, 6-8: one-step resolutions with the recorded kinds") {
    struct Case {
        std::vector<std::string> vars;
        std::vector<std::string> gens;
        int b;
        StepKind kind;
    };
    const Case cases[] = {
        {X, {"x^2"}, 2, StepKind::TCodim1},        // 1
        {XY, {"y^2", "x^3"}, 2, StepKind::TInductive},  // 2
        {XY, {"y^2+x^3"}, 2, StepKind::TInductive},     // 3
        {XY, {"x*y"}, 2, StepKind::TInductive},         // 4
        {X, {"x^3"}, 2, StepKind::TCodim1},        // 6
        {X, {"x^3"}, 3, StepKind::TCodim1},        // 7
        {XY, {"x^2+y^2"}, 2, StepKind::TInductive},     // 8
    };
    for (const auto& c : cases) {
        BasicObject B =
            BasicObject::make(ambient(c.vars, 1), Ideal::parse(c.gens, c.vars, 1), c.b);
        ResolutionTree T = resolve_fiber(B);
        CHECK(T.resolved);
        REQUIRE(T.ell() == 1);
        CHECK(T.steps.front().kind == c.kind);
        CHECK(T.warnings.empty());
    }
}

TEST_CASE("corpus 5: monomial object with three divisors, three Gamma steps") {
    SPair p = ambient(XY, 1, {{"H1", "x"}, {"H2", "y"}, {"H3", "x-1"}});
    BasicObject B =
        BasicObject::make(p, Ideal::parse({"x^2*y^3*(x-1)"}, XY, 1), 2);
    ResolutionTree T = resolve_fiber(B);
    CHECK(T.resolved);
    REQUIRE(T.ell() == 3);
    CHECK(kinds(T) ==
          std::vector<StepKind>{StepKind::Monomial, StepKind::Monomial, StepKind::Monomial});
    // Centers: H2 = V(y), then H1 = V(x), then the point V(y, x-1).
    CHECK(center_vars(T.steps[0]) == std::vector<std::string>{"y"});
    CHECK(center_vars(T.steps[1]) == std::vector<std::string>{"x"});
    auto v2 = center_vars(T.steps[2]);
    std::sort(v2.begin(), v2.end());
    CHECK(v2 == std::vector<std::string>({"x", "y"}));
    CHECK(T.warnings.empty());
}

TEST_CASE("corpus 9: two divisor steps, H2 then H1") {
    SPair p = ambient(XY, 1, {{"H1", "x"}, {"H2", "y"}});
    BasicObject B = BasicObject::make(p, Ideal::parse({"x^2*y^2"}, XY, 1), 2);
    ResolutionTree T = resolve_fiber(B);
    CHECK(T.resolved);
    REQUIRE(T.ell() == 2);
    CHECK(kinds(T) == std::vector<StepKind>{StepKind::Monomial, StepKind::Monomial});
    CHECK(center_vars(T.steps[0]) == std::vector<std::string>{"y"});
    CHECK(center_vars(T.steps[1]) == std::vector<std::string>{"x"});
}

TEST_CASE("corpus 10: t-step then a monomial step on the line") {
    BasicObject B = BasicObject::make(ambient(X, 1), Ideal::parse({"x^4"}, X, 1), 2);
    ResolutionTree T = resolve_fiber(B);
    CHECK(T.resolved);
    REQUIRE(T.ell() == 2);
    CHECK(kinds(T) == std::vector<StepKind>{StepKind::TCodim1, StepKind::Monomial});
}

TEST_CASE("resolved input gives the empty tree") {
    BasicObject B = BasicObject::make(ambient(X, 1), Ideal::parse({"x"}, X, 1), 2);
    CHECK(B.sing_empty());
    ResolutionTree T = resolve_fiber(B);
    CHECK(T.resolved);
    CHECK(T.ell() == 0);
}

TEST_CASE("well-definedness: both adapted hypersurfaces of x^2+y^2 give the same center") {
    BasicObject B =
        BasicObject::make(ambient(XY, 1), Ideal::parse({"x^2+y^2"}, XY, 1), 2);
    OmegaData om = max_omega(B);
    TData td = max_t(B, om, {});
    BasicObject B2 = b_doubleprime(B, om, td, {});

    // Two distinct inductive hypersurfaces V(x) and V(y).
    std::vector<CenterSpec> lifted;
    for (const std::string& zv : {"x", "y"}) {
        AdaptedHypersurface Z;
        Z.chart = "0";
        Z.eq = P(zv, XY, 1);
        Z.witness = Substitution{zv, Z.eq};
        Z.zvar = zv;
        Z.a1 = Z.a2 = Z.a3 = true;
        std::map<std::string, AdaptedHypersurface> adapted{{"0", Z}};
        BasicObject BZ = inductive_object(B2, adapted, true);
        OmegaData omz = max_omega(BZ);
        TData tdz = max_t(BZ, omz, {});
        BranchResult inner = derive_center(BZ, omz, tdz, {});
        lifted.push_back(lift_center_from_Z(inner.center, adapted));
    }
    REQUIRE(lifted.size() == 2);
    for (auto& C : lifted) {
        auto vs = C.by_chart.at("0").front().vanishing_vars;
        std::sort(vs.begin(), vs.end());
        CHECK(vs == std::vector<std::string>({"x", "y"}));
        CHECK(B.is_permissible_center(C).ok);
    }
}

TEST_CASE("equiresolve: (y^2, x^3) over Q[eps]/(eps^2) is equisolvable at V(x,y)") {
    BasicObject B =
        BasicObject::make(ambient(XY, 2), Ideal::parse({"y^2", "x^3"}, XY, 2), 2);
    EquiresReport rep = equiresolve(B);
    CHECK(rep.ell == 1);
    CHECK(rep.e == 1);
    CHECK(rep.equisolvable);
    CHECK(rep.failure_clause.empty());
    REQUIRE(rep.centers.size() == 1);
    auto vs = rep.centers[0].by_chart.at("0").front().vanishing_vars;
    std::sort(vs.begin(), vs.end());
    CHECK(vs == std::vector<std::string>({"x", "y"}));
    CHECK(rep.fiber_tree.steps.front().kind == StepKind::TInductive);
    // The transformed A-object is resolved.
    CHECK(rep.sequence.back().sing_empty());
}

TEST_CASE("equiresolve: (x^2, eps*x) has e = 0 < ell = 1 with no A-permissible lift") {
    BasicObject B =
        BasicObject::make(ambient(X, 2), Ideal::parse({"x^2", "eps*x"}, X, 2), 2);
    EquiresReport rep = equiresolve(B);
    CHECK(rep.ell == 1);
    CHECK(rep.e == 0);
    CHECK(!rep.equisolvable);
    CHECK(rep.failure_clause.find("no A-permissible lift") != std::string::npos);
}

TEST_CASE("equiresolve: resolved fiber gives e = ell = 0") {
    BasicObject B = BasicObject::make(ambient(X, 2), Ideal::parse({"x"}, X, 2), 2);
    EquiresReport rep = equiresolve(B);
    CHECK(rep.ell == 0);
    CHECK(rep.e == 0);
    CHECK(rep.equisolvable);
}

TEST_CASE("principalize: a monomial in E needs no steps") {
    IdTriple T;
    T.pair = ambient(XY, 1, {{"H1", "x"}, {"H2", "y"}});
    T.ideal = Ideal::parse({"x*y"}, XY, 1);
    EquiresReport rep = principalize(T);
    CHECK(rep.ell == 0);
    CHECK(rep.equisolvable);
    REQUIRE(!rep.notes.empty());
    CHECK(rep.notes.front().find("exceptional monomial") != std::string::npos);
}

TEST_CASE("principalize: (y^2, x^3) over Q[eps]/(eps^2) at b = 1") {
    IdTriple T;
    T.pair = ambient(XY, 2);
    T.ideal = Ideal::parse({"y^2", "x^3"}, XY, 2);
    EquiresReport rep = principalize(T);
    CHECK(rep.equisolvable);
    CHECK(rep.e == rep.ell);
    // Hand-derived: three inductive point steps, then the monomial phase.
    REQUIRE(rep.ell >= 3);
    CHECK(rep.ell == 7);
    auto ks = kinds(rep.fiber_tree);
    CHECK(ks[0] == StepKind::TInductive);
    CHECK(ks[1] == StepKind::TInductive);
    CHECK(ks[2] == StepKind::TInductive);
    for (std::size_t i = 3; i < ks.size(); ++i) CHECK(ks[i] == StepKind::Monomial);
    REQUIRE(!rep.notes.empty());
    CHECK(rep.notes.front().find("exceptional monomial") != std::string::npos);
}

TEST_CASE("embedded: the cusp resolves with eta = 3") {
    SPair W = ambient(XY, 1);
    Ideal Xid = Ideal::parse({"y^2-x^3"}, XY, 1);
    EmbeddedReport rep = resolve_embedded(Xid, W);
    CHECK(rep.fiber_ok);
    // Three point blow-ups separate the strict transform; at the fourth step
    // the center is the strict transform itself.
    CHECK(rep.eta == 3);
    CHECK(rep.success);
    CHECK(rep.snc);
    auto ks = kinds(rep.eq.fiber_tree);
    REQUIRE(ks.size() >= 4);
    CHECK(ks[0] == StepKind::TInductive);
    CHECK(ks[1] == StepKind::TInductive);
    CHECK(ks[2] == StepKind::TInductive);
    CHECK(ks[3] == StepKind::TCodim1);
}

TEST_CASE("embedded: a smooth hypersurface has eta = 0") {
    SPair W = ambient(XY, 1);
    EmbeddedReport rep = resolve_embedded(Ideal::parse({"y"}, XY, 1), W);
    CHECK(rep.fiber_ok);
    CHECK(rep.eta == 0);
    CHECK(rep.success);
}

TEST_CASE("embedded: trivial deformation of the cusp is equisolvable") {
    SPair W = ambient(XY, 2);
    Ideal Xid = Ideal::parse({"y^2-x^3"}, XY, 2);
    EmbeddedReport rep = resolve_embedded(Xid, W);
    CHECK(rep.eta == 3);
    CHECK(rep.success);
    CHECK(rep.eq.equisolvable);
}

TEST_CASE("embedded: non-reduced fiber input is rejected") {
    SPair W = ambient(XY, 1);
    CHECK_THROWS_AS(resolve_embedded(Ideal::parse({"y^2"}, XY, 1), W), BadInput);
}
