#include <doctest.h>

#include <cmath>
#include <complex>

#include "cubeshape/enumerate.hpp"
#include "cubeshape/majorant.hpp"
#include "cubeshape/number_field.hpp"
#include "cubeshape/shape.hpp"

using namespace cubeshape;

namespace {

const BinaryCubicForm kCbrt2{1, 0, 0, -2};

// Independent numeric shape pipeline: complex roots of F(x,1), Minkowski
// vectors of 1, alpha, beta, perp projection, Gram, z(Q), float reduction.
std::complex<double> numeric_shape_pipeline(const BinaryCubicForm& f) {
    // roots of F(x,1) = a x^3 + b x^2 + c x + d via the monic polynomial for
    // alpha = a x: x^3 + b x^2 + ac x + a^2 d, then theta = alpha / a
    std::vector<Int> mono{f.a * f.a * f.d, f.a * f.c, f.b};
    auto alpha_roots = polynomial_roots(mono, 1e-12);
    std::vector<std::complex<double>> eta(3);
    double ad = to_double(f.a);
    for (int i = 0; i < 3; ++i) eta[i] = alpha_roots[i] / ad;
    // order: real embedding first
    std::sort(eta.begin(), eta.end(), [](auto p, auto q) {
        return std::abs(p.imag()) < std::abs(q.imag());
    });
    std::complex<double> one(1, 0);
    std::vector<std::complex<double>> j1(3, one), ja(3), jb(3);
    for (int i = 0; i < 3; ++i) {
        ja[i] = ad * eta[i];
        jb[i] = -to_double(f.d) / eta[i];
    }
    // perp vectors 3v - tr(v)
    auto tr = [](const std::vector<std::complex<double>>& v) { return v[0] + v[1] + v[2]; };
    std::vector<std::complex<double>> pa(3), pb(3);
    std::complex<double> ta = tr(ja), tb2 = tr(jb);
    for (int i = 0; i < 3; ++i) {
        pa[i] = 3.0 * ja[i] - ta;
        pb[i] = 3.0 * jb[i] - tb2;
    }
    auto herm = [](const std::vector<std::complex<double>>& u,
                   const std::vector<std::complex<double>>& v) {
        std::complex<double> s(0, 0);
        for (int i = 0; i < 3; ++i) s += u[i] * std::conj(v[i]);
        return s.real();
    };
    double g11 = herm(pa, pa), g12 = herm(pa, pb), g22 = herm(pb, pb);
    double x = g12 / g11;
    double y = std::sqrt(std::max(g11 * g22 - g12 * g12, 0.0)) / g11;
    return gauss_reduce_float({x, y});
}

}  // namespace

TEST_CASE("minkowski gram of x^3 - 2 is diag(3, 6 theta^-1, 6 theta)") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    auto m = minkowski_gram(kCbrt2, ctx);
    CHECK((m[0][0] - ctx->from_rational(Rat(3))).is_zero());
    CHECK(m[0][1].is_zero());
    CHECK(m[0][2].is_zero());
    CHECK((m[1][1] - Rat(6) * ctx->theta_inv()).is_zero());
    CHECK(m[1][2].is_zero());
    CHECK((m[2][2] - Rat(6) * ctx->theta()).is_zero());
}

TEST_CASE("minkowski gram first row is (3, -b, c)") {
    BinaryCubicForm f{1, 1, 12, -22};
    auto ctx = NumberFieldContext::create(f);
    auto m = minkowski_gram(f, ctx);
    CHECK((m[0][0] - ctx->from_rational(Rat(3))).is_zero());
    CHECK((m[0][1] - ctx->from_rational(Rat(-1))).is_zero());
    CHECK((m[0][2] - ctx->from_rational(Rat(12))).is_zero());
    // (2,2) entry is 66 theta^-1 - 12 - theta
    FieldElement expect =
        Rat(66) * ctx->theta_inv() - ctx->from_rational(Rat(12)) - ctx->theta();
    CHECK((m[1][1] - expect).is_zero());
}

TEST_CASE("shape gram formulas") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    ShapeGram sg = shape_gram(kCbrt2, ctx);
    CHECK((sg.g11 - Rat(54) * ctx->theta_inv()).is_zero());
    CHECK(sg.g12.is_zero());
    CHECK((sg.g22 - Rat(54) * ctx->theta()).is_zero());

    BinaryCubicForm f{1, 1, 12, -22};
    auto ctx2 = NumberFieldContext::create(f);
    ShapeGram sg2 = shape_gram(f, ctx2);
    // g11 = 594 theta^-1 - 111 - 9 theta (paper formula; float ~ 293.4)
    FieldElement expect = Rat(594) * ctx2->theta_inv() -
                          ctx2->from_rational(Rat(111)) - Rat(9) * ctx2->theta();
    CHECK((sg2.g11 - expect).is_zero());
    CHECK(sg2.g11.to_double(1e-9) == doctest::Approx(293.38).epsilon(1e-3));
}

TEST_CASE("shape gram agrees with the bilinear expansion of the Minkowski gram") {
    for (const BinaryCubicForm& f :
         {kCbrt2, BinaryCubicForm{1, 1, 2, 3}, BinaryCubicForm{11, 4, -1, -4},
          BinaryCubicForm{1, 1, 12, -22}, BinaryCubicForm{-1, 3, 0, 6}}) {
        auto ctx = NumberFieldContext::create(f);
        ShapeGram direct = shape_gram(f, ctx);
        ShapeGram expanded = shape_gram_via_minkowski(f, ctx);
        CHECK((direct.g11 - expanded.g11).is_zero());
        CHECK((direct.g12 - expanded.g12).is_zero());
        CHECK((direct.g22 - expanded.g22).is_zero());
        // determinant identity: det(shape gram) = 27 |disc|
        FieldElement det = direct.g11 * direct.g22 - direct.g12 * direct.g12;
        CHECK((det - ctx->from_rational(Rat(27 * abs(disc(f))))).is_zero());
    }
}

TEST_CASE("shape points") {
    // Gram (1, 0, 1) -> z = i; form (2, 2, 3) -> z = 1/2 + i sqrt(5)/2
    auto ctx = NumberFieldContext::create(kCbrt2);
    ShapeGram unit{ctx, ctx->one(), ctx->zero(), ctx->one()};
    ShapePoint zp = shape_point(unit);
    CHECK(zp.x_float == doctest::Approx(0.0));
    CHECK(zp.y_float == doctest::Approx(1.0).epsilon(1e-12));
    // (r, s, t) = (2, 2, 3): gram entries (2, 1, 3)
    ShapeGram g223{ctx, ctx->from_rational(Rat(2)), ctx->from_rational(Rat(1)),
                   ctx->from_rational(Rat(3))};
    ShapePoint z2 = shape_point(g223);
    CHECK(z2.x_float == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(z2.y_float == doctest::Approx(std::sqrt(4.0 * 2 * 3 - 4.0) / 4).epsilon(1e-12));

    // sh(Q(cbrt 2)) = i 2^{1/3}
    ShapePoint sh = shape_point(shape_gram(kCbrt2, ctx));
    CHECK(sh.x_float == 0.0);
    CHECK(sh.y_float == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));

    ShapeGram indef{ctx, ctx->one(), ctx->from_rational(Rat(2)), ctx->one()};
    CHECK_THROWS_AS(shape_point(indef), std::domain_error);
}

TEST_CASE("gauss reduction of shapes") {
    auto ctx = NumberFieldContext::create(kCbrt2);
    // i 2^{1/3} is already reduced
    auto [red, g] = reduce_to_gauss(shape_gram(kCbrt2, ctx));
    CHECK(g == Mat2::identity());
    // 1 + i 2^{1/3}: the shape gram of the translated pure cubic (1,3,3,-1)
    BinaryCubicForm moved = act(Mat2{1, 0, 1, 1}, kCbrt2);
    auto ctx2 = NumberFieldContext::create(moved);
    ShapePoint raw = shape_point(shape_gram(moved, ctx2));
    CHECK(std::abs(raw.x_float) == doctest::Approx(1.0).epsilon(1e-9));
    auto [red2, g2] = reduce_to_gauss(shape_gram(moved, ctx2));
    ShapePoint p2 = shape_point(red2);
    CHECK(p2.x_float == doctest::Approx(0.0));
    CHECK(p2.y_float == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
    // shape of (1,1,12,-22): x ~ -0.2957 reflects to +0.2957
    BinaryCubicForm f{1, 1, 12, -22};
    auto ctx3 = NumberFieldContext::create(f);
    ShapePoint raw3 = shape_point(shape_gram(f, ctx3));
    CHECK(raw3.x_float == doctest::Approx(-0.2957).epsilon(1e-3));
    CHECK(raw3.y_float == doctest::Approx(2.772).epsilon(1e-3));
    auto [red3, g3] = reduce_to_gauss(shape_gram(f, ctx3));
    ShapePoint p3 = shape_point(red3);
    CHECK(p3.x_float == doctest::Approx(0.2957).epsilon(1e-3));
    CHECK(p3.y_float == doctest::Approx(2.772).epsilon(1e-3));
    // reduced coordinates satisfy the domain inequalities exactly
    CHECK(red3.g12.sign() >= 0);
    CHECK((Rat(2) * red3.g12 - red3.g11).sign() <= 0);
    CHECK((red3.g22 - red3.g11).sign() >= 0);
}

TEST_CASE("Re(sh) rationality") {
    auto [rat1, re1] = re_shape_is_rational(kCbrt2);
    CHECK(rat1);
    CHECK(re1.is_zero());
    auto [rat2, re2] = re_shape_is_rational(BinaryCubicForm{11, 4, -1, -4});
    CHECK(!rat2);
    auto [rat3, re3] = re_shape_is_rational(BinaryCubicForm{1, 1, 12, -22});
    CHECK(!rat3);
}

TEST_CASE("boundary classification") {
    CHECK(boundary_test(kCbrt2) == BoundaryPosition::on_x_equals_0);
    CHECK(boundary_test(BinaryCubicForm{1, 1, 2, 3}) == BoundaryPosition::interior);
    CHECK(boundary_test(BinaryCubicForm{11, 4, -1, -4}) == BoundaryPosition::interior);
    // tame pure cubic: shape is on a vertical boundary too
    // (1,3,3,-1) is GL2-equivalent to x^3-2, still on x = 0
    CHECK(boundary_test(BinaryCubicForm{1, 3, 3, -1}) == BoundaryPosition::on_x_equals_0);
}

TEST_CASE("on-geodesic certificate") {
    CHECK(on_geodesic_certificate(kCbrt2));
    CHECK(on_geodesic_certificate(BinaryCubicForm{1, 1, 12, -22}));
    CHECK(on_geodesic_certificate(BinaryCubicForm{1, 3, 3, -1}));
    CHECK(on_geodesic_certificate(BinaryCubicForm{11, 4, -1, -4}));
    CHECK(on_geodesic_certificate(BinaryCubicForm{1, 1, 2, 3}));
}

TEST_CASE("exact majorant identity") {
    CHECK(majorant_check_exact(kCbrt2));
    CHECK(majorant_check_exact(BinaryCubicForm{1, 1, 12, -22}));
    CHECK(majorant_check_exact(BinaryCubicForm{11, 4, -1, -4}));
    CHECK(majorant_check_exact(BinaryCubicForm{1, 1, 2, 3}));
}

TEST_CASE("numeric majorant identity") {
    // x^3 - 2
    auto [f1, p1] = majorant_check_numeric({Int(-2), Int(0), Int(0)}, 1e-8);
    CHECK(f1 < 1e-8);
    CHECK(p1 < 1e-8);
    // x^2 - 2: totally real, M = T, residual is pure rounding
    auto [f2, p2] = majorant_check_numeric({Int(-2), Int(0)}, 1e-8);
    CHECK(f2 < 1e-10);
    CHECK(p2 < 1e-10);
    // x^4 - x - 1
    auto [f3, p3] = majorant_check_numeric({Int(-1), Int(-1), Int(0), Int(0)}, 1e-8);
    CHECK(f3 < 1e-8);
    CHECK(p3 < 1e-8);
    // x^5 - x - 1
    auto [f4, p4] = majorant_check_numeric({Int(-1), Int(-1), Int(0), Int(0), Int(0)}, 1e-8);
    CHECK(f4 < 1e-8);
    CHECK(p4 < 1e-8);
    // repeated roots are rejected: x^2 - 2x + 1
    CHECK_THROWS_AS(majorant_check_numeric({Int(1), Int(-2)}, 1e-8), std::domain_error);
}

TEST_CASE("polynomial roots") {
    auto r = polynomial_roots({Int(-2), Int(0), Int(0)});  // x^3 - 2
    REQUIRE(r.size() == 3);
    bool has_real = false;
    for (const auto& z : r)
        if (z.imag() == 0.0) {
            has_real = true;
            CHECK(z.real() == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
        }
    CHECK(has_real);
}

TEST_CASE("exact shapes agree with the numeric pipeline on enumerated forms") {
    int compared = 0;
    for (const Int& d : {Int(5), Int(45), Int(60)}) {
        for (const auto& cls : classes_of_disc(d)) {
            auto records = enumerate_oriented(cls.normalized, Int(100000));
            for (const auto& rec : records) {
                std::complex<double> numeric = numeric_shape_pipeline(rec.form);
                CHECK(std::abs(numeric.real() - rec.shape_x) < 1e-9);
                CHECK(std::abs(numeric.imag() - rec.shape_y) < 1e-9);
                ++compared;
            }
        }
    }
    CHECK(compared >= 100);
}
