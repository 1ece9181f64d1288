#include <catch2/catch_amalgamated.hpp>

#include "hessmf/json_io.hpp"
#include "hessmf/parse.hpp"
#include "test_support.hpp"

using namespace hessmf;
using hessmf::testing::random_poly;

TEST_CASE("parse basics") {
    CHECK(parse_poly("x0*x1*x2", 3) ==
          Poly::monomial(3, {1, 1, 1}, FieldElem(1)));
    Poly hesse1 = parse_poly("x0^3+x1^3+x2^3-3*x0*x1*x2", 3);
    CHECK(hesse1.term_count() == 4);
    CHECK(hesse1.coeff({1, 1, 1}) == FieldElem(-3));
    CHECK(parse_poly("1/2*x0^2", 1).coeff({2}) == FieldElem(mpq_class(1, 2)));
    CHECK(parse_poly("(2+3*w)*x0", 1, Field::QOmega).coeff({1}) ==
          FieldElem(mpq_class(2), mpq_class(3)));
    CHECK(parse_poly("- x0 + 2", 1) == parse_poly("2-x0", 1));
}

TEST_CASE("parse errors") {
    // omega is not in Q
    CHECK_THROWS_AS(parse_poly("x0^2*x1 + w*x2", 3, Field::Q), ParseError);
    // unknown variable
    CHECK_THROWS_AS(parse_poly("x5", 3), ParseError);
    // syntax errors carry position info
    try {
        parse_poly("x0 + + x1", 2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col > 1);
    }
    CHECK_THROWS_AS(parse_poly("x0*(x1+`)", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0", 1), ParseError);
}

TEST_CASE("canonical printing") {
    CHECK(print_poly(parse_poly("x1*x2+x0*x2", 3)) == "x0*x2+x1*x2");
    CHECK(print_poly(Poly::zero(2)) == "0");
    CHECK(print_poly(parse_poly("-x0-1/2", 1)) == "-x0-1/2");
    CHECK(print_poly(parse_poly("x0^2-w*x1^2", 2, Field::QOmega)) == "x0^2-w*x1^2");
    CHECK(print_poly(parse_poly("(1-2*w)*x0", 1, Field::QOmega)) == "(1-2*w)*x0");
}

TEST_CASE("parse/print round trip on random polynomials") {
    Rng rng(424242);
    for (int it = 0; it < 1000; ++it) {
        Field fl = it % 4 == 0 ? Field::QOmega : Field::Q;
        Poly f = random_poly(rng, 1 + (int)rng.int_in(0, 5), 6, (int)rng.int_in(0, 8), fl);
        Poly g = parse_poly(print_poly(f), f.nvars(), fl);
        REQUIRE(g == f);
    }
}

TEST_CASE("print is injective on distinct canonical forms") {
    Rng rng(17);
    std::vector<Poly> polys;
    std::vector<std::string> strs;
    for (int it = 0; it < 60; ++it) {
        Poly f = random_poly(rng, 3, 4, 4);
        for (size_t i = 0; i < polys.size(); ++i) {
            if (polys[i] != f) CHECK(strs[i] != print_poly(f));
        }
        polys.push_back(f);
        strs.push_back(print_poly(f));
    }
}

TEST_CASE("json round trip") {
    Rng rng(888);
    for (int it = 0; it < 100; ++it) {
        Field fl = it % 3 == 0 ? Field::QOmega : Field::Q;
        Poly f = random_poly(rng, 1 + (int)rng.int_in(0, 4), 5, (int)rng.int_in(0, 6), fl);
        Json j = poly_to_json(f);
        CHECK(poly_from_json(j) == f);
        // byte-identical serialization for identical input
        CHECK(j.dump() == poly_to_json(f).dump());
    }
}

TEST_CASE("json rejects omega coefficients in field Q") {
    Poly f = parse_poly("w*x0", 1, Field::QOmega);
    Json j = poly_to_json(f);
    j["field"] = "Q";
    CHECK_THROWS_AS(poly_from_json(j), Error);
}
