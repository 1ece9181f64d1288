#include <catch2/catch_amalgamated.hpp>

#include "hessmf/field.hpp"
#include "hessmf/parse.hpp"
#include "hessmf/poly.hpp"
#include "test_support.hpp"

using namespace hessmf;
using hessmf::testing::random_homogeneous;
using hessmf::testing::random_poly;

TEST_CASE("field arithmetic in Q(w)") {
    FieldElem w = FieldElem::omega();
    // w^2 + w + 1 = 0
    CHECK((w * w + w + FieldElem(1)).is_zero());
    // w^3 = 1
    CHECK(pow_fe(w, 3).is_one());
    // inverse of w is w^2 = -1 - w
    CHECK(w.inverse() == w * w);
    FieldElem z(mpq_class(3, 4), mpq_class(-2, 5));
    CHECK((z * z.inverse()).is_one());
    CHECK(z + (-z) == FieldElem(0));
    // norms multiply
    FieldElem u(mpq_class(2), mpq_class(7));
    CHECK((z * u).norm() == z.norm() * u.norm());
}

TEST_CASE("rational square detection") {
    FieldElem r;
    CHECK(FieldElem(mpq_class(9, 4)).is_rational_square(&r));
    CHECK(r == FieldElem(mpq_class(3, 2)));
    CHECK_FALSE(FieldElem(3).is_rational_square());
    CHECK_FALSE(FieldElem(-4).is_rational_square());
    CHECK_FALSE(FieldElem::omega().is_rational_square());
}

TEST_CASE("basic polynomial arithmetic") {
    // (x0+x1)*(x0-x1) = x0^2 - x1^2
    Poly x0 = Poly::variable(2, 0), x1 = Poly::variable(2, 1);
    CHECK((x0 + x1) * (x0 - x1) == x0 * x0 - x1 * x1);

    // f * 0 = 0
    Poly f = parse_poly("x0^2*x1+3*x0", 2);
    CHECK((f * Poly::zero(2)).is_zero());

    // (x0^3+x1^3+x2^3) - 3*x0x1x2 equals the parsed Hesse form at lambda = 1
    Poly cubes = parse_poly("x0^3+x1^3+x2^3", 3);
    Poly corner = parse_poly("3*x0*x1*x2", 3);
    CHECK(cubes - corner == parse_poly("x0^3+x1^3+x2^3-3*x0*x1*x2", 3));
}

TEST_CASE("ring axioms on random triples") {
    Rng rng(20240811);
    for (int it = 0; it < 40; ++it) {
        Poly a = random_poly(rng, 3, 4, 5);
        Poly b = random_poly(rng, 3, 4, 5);
        Poly c = random_poly(rng, 3, 4, 5);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
    }
}

TEST_CASE("differentiation") {
    CHECK(parse_poly("x0*x1*x2", 3).diff(0) == parse_poly("x1*x2", 3));
    CHECK(parse_poly("x0^3", 1).diff(0) == parse_poly("3*x0^2", 1));
    CHECK(parse_poly("x0^2*x1", 2).diff(1) == parse_poly("x0^2", 2));
    // derivative of a constant is zero
    CHECK(parse_poly("7", 2).diff(0).is_zero());
    // degree drops by one on homogeneous input
    Rng rng(7);
    for (int it = 0; it < 10; ++it) {
        Poly f = random_homogeneous(rng, 3, 5, 6);
        if (f.is_zero()) continue;
        Poly d = f.diff(rng.int_in(0, 2));
        if (!d.is_zero()) CHECK(d.homogeneous_degree() == f.homogeneous_degree() - 1);
    }
}

TEST_CASE("mixed partials commute") {
    Rng rng(99);
    for (int it = 0; it < 20; ++it) {
        Poly f = random_poly(rng, 4, 6, 8);
        int i = rng.int_in(0, 3), j = rng.int_in(0, 3);
        CHECK(f.diff(i).diff(j) == f.diff(j).diff(i));
    }
}

TEST_CASE("evaluation") {
    Poly f = parse_poly("x0*x1*x2", 3);
    CHECK(f.eval(Point::from_ints({1, 1, 1})) == FieldElem(1));
    CHECK(f.eval(Point::from_ints({0, 5, 7})) == FieldElem(0));
    Poly hesse1 = parse_poly("x0^3+x1^3+x2^3-3*x0*x1*x2", 3);
    CHECK(hesse1.eval(Point::from_ints({1, 1, 1})) == FieldElem(0));
}

TEST_CASE("Euler identity for homogeneous forms") {
    Rng rng(123);
    for (int it = 0; it < 20; ++it) {
        Poly f = random_homogeneous(rng, 4, 3 + (uint32_t)rng.int_in(0, 3), 6);
        CHECK(euler_identity_holds(f));
    }
}

TEST_CASE("restrict_to_line") {
    Poly f = parse_poly("x0*x1*x2", 3);
    // both points on coordinate axes: the whole line lies in V(f)
    Poly r = restrict_to_line(f, Point::from_ints({1, 0, 0}), Point::from_ints({0, 1, 0}));
    CHECK(r.is_zero());

    Poly cube = parse_poly("x0^3", 2);
    Poly rc = restrict_to_line(cube, Point::from_ints({1, 0}), Point::from_ints({0, 1}));
    CHECK(rc == parse_poly("x0^3", 2));  // s^3 in the (s, t) ring

    // eval(restrict_to_line(f,p,q),(s0,t0)) == eval(f, s0 p + t0 q)
    Rng rng(5);
    for (int it = 0; it < 15; ++it) {
        Poly g = random_poly(rng, 3, 4, 6);
        Point p = rng.int_point(3, 9), q = rng.int_point(3, 9);
        Poly line = restrict_to_line(g, p, q);
        FieldElem s0(rng.int_in(-9, 9)), t0(rng.int_in(-9, 9));
        std::vector<FieldElem> comb(3);
        for (int i = 0; i < 3; ++i) comb[i] = s0 * p[i] + t0 * q[i];
        CHECK(line.eval(Point({s0, t0})) == g.eval(Point(std::move(comb))));
    }
}

TEST_CASE("mismatched variable count and field are rejected") {
    Poly a = Poly::variable(2, 0);
    Poly b = Poly::variable(3, 0);
    CHECK_THROWS_AS(a + b, Error);
    Poly c = Poly::variable(2, 0, Field::QOmega);
    CHECK_THROWS_AS(a * c, Error);
}

TEST_CASE("exact division") {
    Poly f = parse_poly("x0^2-x1^2", 2);
    Poly g = parse_poly("x0-x1", 2);
    CHECK(div_exact(f, g) == parse_poly("x0+x1", 2));
    CHECK(divides(g, f));
    CHECK_FALSE(divides(parse_poly("x0+2*x1", 2), f));
    Rng rng(31);
    for (int it = 0; it < 20; ++it) {
        Poly a = random_poly(rng, 3, 3, 4);
        Poly b = random_poly(rng, 3, 3, 4);
        if (b.is_zero()) continue;
        CHECK(div_exact(a * b, b) == a);
    }
}

TEST_CASE("homogeneity validation") {
    CHECK(parse_poly("x0^3+x1^3", 2).is_homogeneous());
    CHECK_FALSE(parse_poly("x0^3+x1^2", 2).is_homogeneous());
    CHECK_THROWS_AS(parse_poly("x0^3+x1^2", 2).homogeneous_degree(), Error);
}
