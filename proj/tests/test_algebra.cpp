// Oracle tests for the exact-arithmetic kernel: ArtinScalar, Poly, Groebner
// bases over Q, and ideal membership / order computations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "equires/groebner.hpp"
#include "equires/ideal.hpp"
#include "equires/poly.hpp"

#include <random>

using namespace equires;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> X{"x"};

Poly P(const std::string& s, const std::vector<std::string>& vars, int m) {
    return Poly::parse(s, vars, m);
}

}  // namespace

TEST_CASE("ArtinScalar arithmetic in Q[eps]/(eps^m)") {
    // (1 + eps)(1 - eps) = 1 for m = 2.
    ArtinScalar one(2, Rat(1));
    ArtinScalar e = ArtinScalar::eps(2);
    CHECK((one + e) * (one - e) == one);

    // inverse(2 + eps) = 1/2 - eps/4 in Q[eps]/(eps^2); verified by
    // multiplying back to 1.
    ArtinScalar a = ArtinScalar(2, Rat(2)) + e;
    ArtinScalar inv = a.inverse();
    CHECK(inv.coeff(0) == Rat(1, 2));
    CHECK(inv.coeff(1) == Rat(-1, 4));
    CHECK(a * inv == one);

    // fiber projection.
    ArtinScalar b = ArtinScalar(2, Rat(3)) + ArtinScalar::eps(2) * ArtinScalar(2, Rat(5));
    CHECK(b.fiber() == Rat(3));
    CHECK_THROWS_AS(e.inverse(), NonUnit);

    // fiber is a ring homomorphism.
    ArtinScalar c = ArtinScalar(3, {Rat(2), Rat(1), Rat(7)});
    ArtinScalar d = ArtinScalar(3, {Rat(-1), Rat(4), Rat(0)});
    CHECK((c * d).fiber() == c.fiber() * d.fiber());
    CHECK((c + d).fiber() == c.fiber() + d.fiber());
}

TEST_CASE("Poly parse/print round trip and arithmetic") {
    Poly p = P("3/2*eps*x^2*y + y^2 - x^3", XY, 2);
    CHECK(Poly::parse(p.to_string(), XY, 2) == p);

    // Derivatives: d/dx (z^2 + eps*x^2) = 2*eps*x.
    std::vector<std::string> XZ{"x", "z"};
    Poly f = P("z^2 + eps*x^2", XZ, 2);
    CHECK(f.derivative("x") == P("2*eps*x", XZ, 2));
    CHECK(P("x^3", XY, 2).derivative("y").is_zero());
    Poly g = P("x^5 + eps*x^2*z + z^4", XZ, 2);
    CHECK(g.derivative("x") == P("5*x^4 + 2*eps*x*z", XZ, 2));
    CHECK_THROWS_AS(f.derivative("w"), UnknownVariable);

    // Coordinate change of Ex-style data: (x - eps)^3 = x^3 - 3*eps*x^2 mod eps^2.
    Poly cube = P("x^3", X, 2).substitute("x", P("x - eps", X, 2));
    CHECK(cube == P("x^3 - 3*eps*x^2", X, 2));

    // eps-adjoined view round trip.
    CHECK(Poly::absorb_eps(p.adjoin_eps(), 2) == p);

    // exact division.
    Poly h = P("x^2*y^2 - x^3*y", XY, 1);
    auto q = h.exact_divide(P("x^2", XY, 1));
    REQUIRE(q.has_value());
    CHECK(*q == P("y^2 - x*y", XY, 1));
    CHECK(!h.exact_divide(P("y^2", XY, 1)).has_value());
}

TEST_CASE("Groebner bases over Q are reduced and deterministic") {
    // {y^2 + x^3, y} -> {y, x^3}.
    auto gb = groebner_basis({P("y^2 + x^3", XY, 1), P("y", XY, 1)});
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == P("y", XY, 1));
    CHECK(gb[1] == P("x^3", XY, 1));

    // {x} -> {x}.
    auto gb1 = groebner_basis({P("x", XY, 1)});
    REQUIRE(gb1.size() == 1);
    CHECK(gb1[0] == P("x", XY, 1));

    // {x^2, xy, y^2} is already a GB.
    auto gb2 = groebner_basis({P("x^2", XY, 1), P("x*y", XY, 1), P("y^2", XY, 1)});
    REQUIRE(gb2.size() == 3);

    // Determinism.
    CHECK(groebner_basis({P("y^2 + x^3", XY, 1), P("y", XY, 1)}) == gb);
}

TEST_CASE("Ideal membership at fiber and full level") {
    Ideal I = Ideal::parse({"x^2", "eps*x"}, X, 2);
    CHECK(I.contains(P("eps*x", X, 2), Level::Full));
    // x is not in (x^2, eps*x) over A.
    CHECK(!I.contains(P("x", X, 2), Level::Full));
    CHECK(!I.contains(P("eps", X, 2), Level::Full));
    CHECK(I.contains(P("eps*x^5 + x^3", X, 2), Level::Full));
    // Fiber level: (x^2).
    CHECK(!I.contains(P("x", X, 2), Level::Fiber));
    CHECK(I.contains(P("x^2 + eps*x", X, 2), Level::Fiber));

    // (y, x^2)^2 = (y^2, x^2 y, x^4); y^2 is a member, y^2 + x^3 is not.
    Ideal J = Ideal::parse({"y", "x^2"}, XY, 1).power(2);
    CHECK(J.contains(P("y^2", XY, 1), Level::Fiber));
    CHECK(!J.contains(P("y^2 + x^3", XY, 1), Level::Fiber));
    CHECK(J.equals(Ideal::parse({"y^2", "x^2*y", "x^4"}, XY, 1), Level::Full));
}

TEST_CASE("Ideal products match the Ex 8.6 homogenization input") {
    Ideal D = Ideal::parse({"y", "x^2"}, XY, 2);
    Ideal sq = (D * D).pruned();
    CHECK(sq.equals(Ideal::parse({"y^2", "x^2*y", "x^4"}, XY, 2), Level::Full));
    // Exact division of (w^2 y^2, w^2 x) by w^2.
    std::vector<std::string> WXY{"w", "x", "y"};
    Ideal K = Ideal::parse({"w^2*y^2", "w^2*x"}, WXY, 1);
    Ideal Kq = K.exact_divide(P("w^2", WXY, 1));
    CHECK(Kq.equals(Ideal::parse({"y^2", "x"}, WXY, 1), Level::Full));
    CHECK_THROWS_AS(K.exact_divide(P("w^3", WXY, 1)), NotDivisible);
}

TEST_CASE("order_at_point and order along coordinate directions") {
    std::vector<std::string> vars{"x", "y"};
    // Ex 4.2: I = (eps*x + y^2 + x^3): fiber order 2, full order 1 at origin.
    Ideal I = Ideal::parse({"eps*x + y^2 + x^3"}, vars, 2);
    std::vector<ArtinScalar> origin{ArtinScalar(2), ArtinScalar(2)};
    CHECK(I.order_at_point(origin, Level::Fiber) == 2);
    CHECK(I.order_at_point(origin, Level::Full) == 1);
    CHECK(Ideal::parse({"x"}, vars, 2).order_at_point(origin, Level::Full) == 1);

    // nu(I, C) by degree in center variables: V(x, y) gives 1 over A, 2 on fiber.
    CHECK(I.order_in_vars({"x", "y"}, Level::Full) == 1);
    CHECK(I.order_in_vars({"x", "y"}, Level::Fiber) == 2);

    // Ex 6.10 orders.
    std::vector<std::string> XZ{"x", "z"};
    Ideal J = Ideal::parse({"x^5 + eps*x^2*z + z^4"}, XZ, 2);
    CHECK(J.order_in_vars({"x", "z"}, Level::Full) == 3);
    CHECK(J.order_in_vars({"x", "z"}, Level::Fiber) == 4);
    Ideal K = Ideal::parse({"x^30"}, {"x"}, 2);
    CHECK(K.order_in_vars({"x"}, Level::Full) == 30);

    // Zero ideal: infinite order signal.
    CHECK(!Ideal::zero(vars, 2).order_at_point(origin, Level::Full).has_value());
}

TEST_CASE("Radical membership and elimination") {
    Ideal I = Ideal::parse({"x^2"}, XY, 1);
    CHECK(I.radical_contains(P("x", XY, 1)));
    CHECK(!I.radical_contains(P("y", XY, 1)));

    // Eliminate x from (y - x^2): image ideal of the parabola under projection
    // to y... (no relation) -> empty; from (x, y - 1): (y - 1).
    auto gb = groebner_basis({P("x", XY, 1), P("y - 1", XY, 1)}, /*elim_block=*/1);
    auto img = eliminate(gb, 1);
    REQUIRE(img.size() == 1);
    CHECK(img[0] == P("y - 1", {"y"}, 1));
}

TEST_CASE("Variety dimension from leading terms") {
    CHECK(variety_dimension(groebner_basis({P("x", XY, 1), P("y", XY, 1)})) == 0);
    CHECK(variety_dimension(groebner_basis({P("x", XY, 1)})) == 1);
    CHECK(variety_dimension(groebner_basis({P("x*y", XY, 1)})) == 1);
    CHECK(variety_dimension(groebner_basis({P("1", XY, 1)})) == -1);
}

namespace {

std::mt19937 rng(20240817);

Poly random_poly(const std::vector<std::string>& vars, int m, int max_deg, int nterms) {
    Poly p(vars, m);
    std::uniform_int_distribution<int> dcoef(-4, 4), dexp(0, max_deg), deps(0, m - 1);
    for (int t = 0; t < nterms; ++t) {
        Exponents e(vars.size());
        int budget = max_deg;
        for (auto& x : e) {
            x = std::uniform_int_distribution<int>(0, budget)(rng);
            budget -= x;
        }
        int c = dcoef(rng);
        if (c == 0) continue;
        ArtinScalar s = ArtinScalar(m, Rat(c)) * ArtinScalar::eps(m, deps(rng));
        p.add_term(e, s);
    }
    return p;
}

}  // namespace

TEST_CASE("property: fiber GB membership agrees with brute-force reduction") {
    for (int trial = 0; trial < 50; ++trial) {
        Poly a = random_poly(XY, 1, 3, 3);
        Poly b = random_poly(XY, 1, 3, 3);
        if (a.is_zero() || b.is_zero()) continue;
        Ideal I(XY, 1, {a, b});
        // A visibly constructed member must test positive.
        Poly member = a * random_poly(XY, 1, 2, 2) + b * random_poly(XY, 1, 2, 2);
        CHECK(I.contains(member, Level::Fiber));
    }
}

TEST_CASE("property: order_at_point equals order along the full maximal ideal") {
    for (int trial = 0; trial < 50; ++trial) {
        Poly a = random_poly(XY, 2, 4, 4);
        if (a.is_zero()) continue;
        Ideal I(XY, 2, {a});
        std::vector<ArtinScalar> origin{ArtinScalar(2), ArtinScalar(2)};
        auto o1 = I.order_at_point(origin, Level::Fiber);
        auto o2 = I.fiber().order_in_vars(XY, Level::Fiber);
        CHECK(o1 == o2);
    }
}
