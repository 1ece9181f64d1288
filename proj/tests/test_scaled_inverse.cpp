#include <catch2/catch_amalgamated.hpp>

#include "hessmf/parse.hpp"
#include "hessmf/scaled_inverse.hpp"
#include "test_support.hpp"

using namespace hessmf;

static PolyMatrix matrix_of(int n, int nvars, std::vector<std::string> entries,
                            Field fl = Field::Q) {
    PolyMatrix m(n, n, nvars, fl);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, parse_poly(entries[(size_t)i * n + j], nvars, fl));
    return m;
}

TEST_CASE("scaled inverse reproduces the x0*x1*x2 quadratic companion") {
    Poly f = parse_poly("x0*x1*x2", 3);
    auto res = scaled_inverse(hessian(f), f, 1, VerifyMode::exact(), 42);
    REQUIRE(res.present());
    PolyMatrix expect = matrix_of(3, 3,
        {"-1/2*x0^2", "1/2*x0*x1", "1/2*x0*x2",
         "1/2*x0*x1", "-1/2*x1^2", "1/2*x1*x2",
         "1/2*x0*x2", "1/2*x1*x2", "-1/2*x2^2"});
    CHECK(*res.q == expect);
    CHECK(all_pass(res.checks));
}

TEST_CASE("scaled inverse of the two-variable cubic") {
    Poly f = parse_poly("x0^2*x1", 2);
    auto res = scaled_inverse(hessian(f), f, 1, VerifyMode::exact(), 7);
    REQUIRE(res.present());
    PolyMatrix expect = matrix_of(2, 2, {"0", "1/2*x0*x1", "1/2*x0*x1", "-1/2*x1^2"});
    CHECK(*res.q == expect);
}

TEST_CASE("scaled inverse absent for the catalecticant cubic") {
    // det of [[x0,x1,x2],[x1,x2,x3],[x2,x3,x4]]
    Poly f = parse_poly("x0*x2*x4-x0*x3^2-x1^2*x4+2*x1*x2*x3-x2^3", 5);
    auto res = scaled_inverse(hessian(f), f, 1, VerifyMode::exact(), 9);
    CHECK_FALSE(res.present());
    CHECK((res.witness_kind == "fit_mismatch" || res.witness_kind == "verify_residual"));
    if (res.witness_point) {
        // the witness point genuinely separates the fit from f * H^{-1}
        CHECK_FALSE(scalar_det(hessian(f).eval(*res.witness_point)).is_zero());
    }
}

TEST_CASE("monotonicity: present at r implies present at r+1 with Q scaled by f") {
    Poly f = parse_poly("x0*x1*x2", 3);
    PolyMatrix h = hessian(f);
    auto r1 = scaled_inverse(h, f, 1, VerifyMode::exact(), 3);
    auto r2 = scaled_inverse(h, f, 2, VerifyMode::exact(), 3);
    REQUIRE(r1.present());
    REQUIRE(r2.present());
    CHECK(*r2.q == *r1.q * f);
}

TEST_CASE("probabilistic verification mode records its failure bound") {
    Poly f = parse_poly("x0*x1*x2", 3);
    auto res = scaled_inverse(hessian(f), f, 1, VerifyMode::probabilistic(99, 25), 99);
    REQUIRE(res.present());
    CHECK(res.failure_bound.find("^25") != std::string::npos);
    CHECK(!res.points_digest.empty());
}

TEST_CASE("singular matrix is reported, not guessed") {
    // Hessian of x0^3 embedded in 2 variables has identically zero determinant
    Poly f = parse_poly("x0^3", 2);
    CHECK_THROWS_AS(scaled_inverse(hessian(f), f, 1, VerifyMode::exact(), 5),
                    SingularMatrixError);
}

TEST_CASE("constant-entry matrix: quadric certificate") {
    Poly f = parse_poly("x0^2+x1^2", 2);
    auto res = scaled_inverse(hessian(f), f, 1, VerifyMode::exact(), 21);
    REQUIRE(res.present());
    // Q = f/2 * Id
    CHECK(res.q->at(0, 0) == parse_poly("1/2*x0^2+1/2*x1^2", 2));
    CHECK(res.q->at(0, 1).is_zero());
}

TEST_CASE("deterministic: same seed, same result") {
    Poly f = parse_poly("x0*x1*x2", 3);
    auto a = scaled_inverse(hessian(f), f, 1, VerifyMode::probabilistic(5, 20), 5);
    auto b = scaled_inverse(hessian(f), f, 1, VerifyMode::probabilistic(5, 20), 5);
    REQUIRE(a.present());
    REQUIRE(b.present());
    CHECK(*a.q == *b.q);
    CHECK(a.points_digest == b.points_digest);
}

TEST_CASE("interpolated entries match fresh evaluations (independent line oracle)") {
    // independent check of presence/absence: restrict to a random line and test
    // whether det(H(t)) divides f(t)^r * adj(H(t)) entrywise, univariately
    Rng rng(2718);
    auto line_poly_test = [&](const Poly& f, int r) {
        PolyMatrix h = hessian(f);
        int n = f.nvars();
        Point p = rng.int_point(n, 9), q = rng.int_point(n, 9);
        PolyMatrix hline(n, n, 2, f.field());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) hline.set(i, j, restrict_to_line(h.at(i, j), p, q));
        Poly dt = det(hline);
        if (dt.is_zero()) return std::optional<bool>();
        Poly ft = restrict_to_line(f, p, q).pow((unsigned)r);
        // adjugate via solve: adj = det * inverse; use cofactor from det of minors
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                PolyMatrix minor(n - 1, n - 1, 2, f.field());
                for (int a = 0, ar = 0; a < n; ++a) {
                    if (a == j) continue;
                    for (int b = 0, bc = 0; b < n; ++b) {
                        if (b == i) continue;
                        minor.set(ar, bc, hline.at(a, b));
                        ++bc;
                    }
                    ++ar;
                }
                Poly cof = det(minor);
                if ((i + j) % 2 == 1) cof = -cof;
                if (!divides(dt, ft * cof)) return std::optional<bool>(false);
            }
        return std::optional<bool>(true);
    };

    Poly f3 = parse_poly("x0*x1*x2", 3);
    auto o1 = line_poly_test(f3, 1);
    REQUIRE(o1.has_value());
    CHECK(*o1);

    Poly hank = parse_poly("x0*x2*x4-x0*x3^2-x1^2*x4+2*x1*x2*x3-x2^3", 5);
    auto o2 = line_poly_test(hank, 1);
    REQUIRE(o2.has_value());
    CHECK_FALSE(*o2);

    // and the engine agrees with the oracle on both
    CHECK(scaled_inverse(hessian(f3), f3, 1, VerifyMode::exact(), 1).present());
    CHECK_FALSE(scaled_inverse(hessian(hank), hank, 1, VerifyMode::exact(), 1).present());
}
