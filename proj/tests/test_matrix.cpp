#include <catch2/catch_amalgamated.hpp>

#include "hessmf/matrix.hpp"
#include "hessmf/parse.hpp"
#include "test_support.hpp"

using namespace hessmf;
using hessmf::testing::naive_det;
using hessmf::testing::random_homogeneous;
using hessmf::testing::random_poly;

static PolyMatrix matrix_of(int n, int nvars, std::vector<std::string> entries,
                            Field fl = Field::Q) {
    PolyMatrix m(n, n, nvars, fl);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, parse_poly(entries[(size_t)i * n + j], nvars, fl));
    return m;
}

TEST_CASE("hessian of x0*x1*x2") {
    PolyMatrix h = hessian(parse_poly("x0*x1*x2", 3));
    PolyMatrix expect = matrix_of(3, 3, {"0", "x2", "x1", "x2", "0", "x0", "x1", "x0", "0"});
    CHECK(h == expect);
    CHECK(h.is_symmetric());
}

TEST_CASE("hessian small cases") {
    CHECK(hessian(parse_poly("x0^3", 1)).at(0, 0) == parse_poly("6*x0", 1));
    PolyMatrix h = hessian(parse_poly("x0^2*x1", 2));
    CHECK(h == matrix_of(2, 2, {"2*x1", "2*x0", "2*x0", "0"}));
    CHECK_THROWS_AS(hessian(parse_poly("x0", 1)), Error);
    CHECK_THROWS_AS(hessian(parse_poly("x0^2+x1", 2)), Error);
}

TEST_CASE("hessian is symmetric with homogeneous entries of degree d-2") {
    Rng rng(606);
    for (int it = 0; it < 10; ++it) {
        Poly f = random_homogeneous(rng, 4, 4, 7);
        if (f.is_zero() || f.degree() < 2) continue;
        PolyMatrix h = hessian(f);
        CHECK(h.is_symmetric());
        auto d = h.uniform_entry_degree();
        REQUIRE(d.has_value());
        CHECK(*d == f.homogeneous_degree() - 2);
    }
}

TEST_CASE("determinant examples") {
    CHECK(det(hessian(parse_poly("x0*x1*x2", 3))) == parse_poly("2*x0*x1*x2", 3));
    CHECK(det(PolyMatrix::identity(3, 3)) == Poly::constant(3, FieldElem(1)));
    CHECK(det(hessian(parse_poly("x0^2*x1", 2))) == parse_poly("-4*x0^2", 2));
}

TEST_CASE("determinant routes agree with the cofactor oracle") {
    Rng rng(2025);
    for (int it = 0; it < 12; ++it) {
        int n = 2 + (int)rng.int_in(0, 3);
        PolyMatrix m(n, n, 3, Field::Q);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, random_poly(rng, 3, 2, 2));
        Poly expect = naive_det(m);
        CHECK(det(m) == expect);               // Bareiss route
        CHECK(detail::det_minor_dp(m) == expect);  // memoized-minor route
    }
}

TEST_CASE("determinant guard above 15 variables") {
    PolyMatrix m = PolyMatrix::identity(2, 16);
    CHECK_THROWS_AS(det(m), Error);
    CHECK(det(m, /*force_large=*/true) == Poly::constant(16, FieldElem(1)));
}

TEST_CASE("pfaffian small cases") {
    // pf [[0, a], [-a, 0]] = a  with a = x0
    PolyMatrix m2(2, 2, 1, Field::Q);
    m2.set(0, 1, parse_poly("x0", 1));
    m2.set(1, 0, parse_poly("-x0", 1));
    CHECK(pfaffian(m2) == parse_poly("x0", 1));

    // generic skew 4x4 in variables m01..m23 = x0..x5
    PolyMatrix m4(4, 4, 6, Field::Q);
    const char* names[4][4] = {};
    int idx = 0;
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) pos.push_back({i, j});
    for (auto [i, j] : pos) {
        Poly v = Poly::variable(6, idx++);
        m4.set(i, j, v);
        m4.set(j, i, -v);
    }
    (void)names;
    // x0=m01, x1=m02, x2=m03, x3=m12, x4=m13, x5=m23
    CHECK(pfaffian(m4) == parse_poly("x0*x5-x1*x4+x2*x3", 6));
    CHECK_THROWS_AS(pfaffian(PolyMatrix::identity(2, 1)), Error);  // not skew
    PolyMatrix odd(3, 3, 1, Field::Q);
    CHECK_THROWS_AS(pfaffian(odd), Error);  // odd size
}

TEST_CASE("pf^2 == det for random skew matrices up to 8x8") {
    Rng rng(91);
    for (int n : {2, 4, 6, 8}) {
        for (int rep = 0; rep < 3; ++rep) {
            PolyMatrix m(n, n, 3, Field::Q);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Poly e = random_poly(rng, 3, 2, 2);
                    m.set(i, j, e);
                    m.set(j, i, -e);
                }
            Poly pf = pfaffian(m);
            CHECK(pf * pf == det(m));
        }
    }
}
