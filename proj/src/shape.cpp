#include "cubeshape/shape.hpp"

#include <cmath>

namespace cubeshape {

namespace {

// u theta^-1 + v + w theta as a field element
FieldElement tb(const ContextPtr& ctx, const Int& u, const Int& v, const Int& w) {
    return ctx->element(
        basis_convert({Rat(u), Rat(v), Rat(w)}, BasisDirection::from_theta_basis, *ctx));
}

void require_complex_irreducible(const BinaryCubicForm& f) {
    if (!is_irreducible(f)) throw std::domain_error("shape: form must be irreducible");
    if (sgn(disc(f)) >= 0) throw std::domain_error("shape: form must be a complex cubic (disc < 0)");
}

}  // namespace

std::array<std::array<FieldElement, 3>, 3> minkowski_gram(const BinaryCubicForm& f,
                                                          const ContextPtr& ctx) {
    require_complex_irreducible(f);
    const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    auto rat = [&](const Int& n) { return ctx->from_rational(Rat(n)); };
    std::array<std::array<FieldElement, 3>, 3> m;
    m[0][0] = rat(3);
    m[0][1] = m[1][0] = rat(-b);
    m[0][2] = m[2][0] = rat(c);
    m[1][1] = tb(ctx, -3 * a * d, -a * c, -a * b);            // -a (3d theta^-1 + c + b theta)
    m[1][2] = m[2][1] = tb(ctx, -b * d, -b * c, -a * c);      // -(bd theta^-1 + bc + ac theta)
    m[2][2] = tb(ctx, -c * d, -b * d, -3 * a * d);            // -d (c theta^-1 + b + 3a theta)
    return m;
}

ShapeGram shape_gram(const BinaryCubicForm& f, const ContextPtr& ctx) {
    require_complex_irreducible(f);
    const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    ShapeGram sg;
    sg.ctx = ctx;
    sg.g11 = tb(ctx, -27 * a * d, -3 * (b * b + 3 * a * c), -9 * a * b);
    sg.g12 = tb(ctx, -9 * b * d, -6 * b * c, -9 * a * c);
    sg.g22 = tb(ctx, -9 * c * d, -3 * (c * c + 3 * b * d), -27 * a * d);
    if (sg.g11.sign() <= 0 || (sg.g11 * sg.g22 - sg.g12 * sg.g12).sign() <= 0)
        throw std::logic_error("shape_gram: Gram matrix not positive definite");
    return sg;
}

ShapeGram shape_gram(const BinaryCubicForm& f) {
    return shape_gram(f, NumberFieldContext::create(f));
}

ShapeGram shape_gram_via_minkowski(const BinaryCubicForm& f, const ContextPtr& ctx) {
    auto m = minkowski_gram(f, ctx);
    // alpha-perp = 3 alpha + b, beta-perp = 3 beta - c, expanded bilinearly
    Rat b(f.b), c(f.c);
    ShapeGram sg;
    sg.ctx = ctx;
    sg.g11 = Rat(9) * m[1][1] + (6 * b) * m[0][1] + (b * b) * m[0][0];
    sg.g12 = Rat(9) * m[1][2] + (3 * b) * m[0][2] - (3 * c) * m[0][1] - (b * c) * m[0][0];
    sg.g22 = Rat(9) * m[2][2] - (6 * c) * m[0][2] + (c * c) * m[0][0];
    return sg;
}

ShapePoint shape_point(const ShapeGram& sg) {
    if (sg.g11.sign() <= 0 || (sg.g11 * sg.g22 - sg.g12 * sg.g12).sign() <= 0)
        throw std::domain_error("shape_point: form is not positive definite");
    FieldElement inv11 = sg.g11.inverse();
    FieldElement x = sg.g12 * inv11;
    FieldElement ysq = (sg.g11 * sg.g22 - sg.g12 * sg.g12) * inv11 * inv11;
    ShapePoint p;
    p.x_exact = x;
    p.y_squared = ysq;
    p.x_float = x.to_double(1e-13);
    double y2 = ysq.to_double(1e-13);
    p.y_float = std::sqrt(y2);
    return p;
}

std::pair<ShapeGram, Mat2> reduce_to_gauss(const ShapeGram& sg) {
    ShapeGram cur = sg;
    Mat2 g = Mat2::identity();
    auto apply = [&](const Mat2& m) {
        // Gram transforms as G -> m G m^T under Q(v) = v G v^T, v -> v m
        FieldElement ng11 = Rat(m.a * m.a) * cur.g11 + Rat(2 * m.a * m.b) * cur.g12 +
                            Rat(m.b * m.b) * cur.g22;
        FieldElement ng12 = Rat(m.a * m.c) * cur.g11 + Rat(m.a * m.d + m.b * m.c) * cur.g12 +
                            Rat(m.b * m.d) * cur.g22;
        FieldElement ng22 = Rat(m.c * m.c) * cur.g11 + Rat(2 * m.c * m.d) * cur.g12 +
                            Rat(m.d * m.d) * cur.g22;
        cur.g11 = ng11;
        cur.g12 = ng12;
        cur.g22 = ng22;
        g = m * g;
    };
    for (int iter = 0; iter < 100000; ++iter) {
        // translate so that -g11 < 2 g12 <= g11
        double xf = cur.g12.to_double(1e-9) / cur.g11.to_double(1e-9);
        Int k = Int(static_cast<long>(std::llround(-xf)));
        for (int fix = 0; fix < 64; ++fix) {
            FieldElement s2 = Rat(2) * (cur.g12 + Rat(k) * cur.g11);
            if ((s2 + cur.g11).sign() > 0 && (s2 - cur.g11).sign() <= 0) break;
            if ((s2 + cur.g11).sign() <= 0)
                k += 1;
            else
                k -= 1;
        }
        if (sgn(k) != 0) apply({1, 0, k, 1});  // x -> x + k y
        if (cur.g12.sign() < 0) apply({1, 0, 0, -1});
        if ((cur.g11 - cur.g22).sign() > 0) {
            apply({0, 1, -1, 0});  // z -> -1/z
            continue;
        }
        // now 0 <= 2 g12 <= g11 <= g22; x = g12/g11 in [0, 1/2], |z| >= 1
        return {cur, g};
    }
    throw std::logic_error("reduce_to_gauss: did not terminate");
}

std::pair<bool, FieldElement> re_shape_is_rational(const BinaryCubicForm& f) {
    ShapeGram sg = shape_gram(f);
    FieldElement x = sg.g12 * sg.g11.inverse();
    return {x.is_rational(), x};
}

std::string boundary_name(BoundaryPosition b) {
    switch (b) {
        case BoundaryPosition::interior: return "interior";
        case BoundaryPosition::on_x_equals_0: return "on_x_equals_0";
        case BoundaryPosition::on_x_equals_half: return "on_x_equals_half";
        case BoundaryPosition::on_unit_circle: return "on_unit_circle";
    }
    return "?";
}

BoundaryPosition boundary_test(const BinaryCubicForm& f) {
    auto [red, g] = reduce_to_gauss(shape_gram(f));
    // form coefficients (R, S, T) = (g11, 2 g12, g22)
    if (red.g12.is_zero()) return BoundaryPosition::on_x_equals_0;
    if ((Rat(2) * red.g12 - red.g11).is_zero()) return BoundaryPosition::on_x_equals_half;
    if ((red.g11 - red.g22).is_zero()) return BoundaryPosition::on_unit_circle;
    return BoundaryPosition::interior;
}

bool on_geodesic_certificate(const BinaryCubicForm& f, const ContextPtr& ctx) {
    BQF h = hessian(f);
    ShapeGram sg = shape_gram(f, ctx);
    // 2 p t_M - q s_M + 2 u r_M with (r_M, s_M, t_M) = (g11, 2 g12, g22)
    FieldElement lhs = Rat(2 * h.r) * sg.g22 - Rat(2 * h.s) * sg.g12 + Rat(2 * h.t) * sg.g11;
    return lhs.is_zero();
}

bool on_geodesic_certificate(const BinaryCubicForm& f) {
    return on_geodesic_certificate(f, NumberFieldContext::create(f));
}

bool majorant_check_exact(const BinaryCubicForm& f, const ContextPtr& ctx) {
    SymMat2 t = trace_zero_gram(f);
    Int dt = t.m11 * t.m22 - t.m12 * t.m12;
    if (sgn(dt) == 0) throw std::domain_error("majorant_check_exact: singular trace-zero form");
    ShapeGram m = shape_gram(f, ctx);
    // M adj(T) M = det(T) T avoids the division
    FieldElement a11 = m.g11 * Rat(t.m22) - m.g12 * Rat(t.m12);
    FieldElement a12 = -(m.g11 * Rat(t.m12)) + m.g12 * Rat(t.m11);
    FieldElement a21 = m.g12 * Rat(t.m22) - m.g22 * Rat(t.m12);
    FieldElement a22 = -(m.g12 * Rat(t.m12)) + m.g22 * Rat(t.m11);
    FieldElement r11 = a11 * m.g11 + a12 * m.g12;
    FieldElement r12 = a11 * m.g12 + a12 * m.g22;
    FieldElement r21 = a21 * m.g11 + a22 * m.g12;
    FieldElement r22 = a21 * m.g12 + a22 * m.g22;
    Rat det(dt);
    return (r11 - det * m.ctx->from_rational(Rat(t.m11))).is_zero() &&
           (r12 - det * m.ctx->from_rational(Rat(t.m12))).is_zero() &&
           (r21 - det * m.ctx->from_rational(Rat(t.m12))).is_zero() &&
           (r22 - det * m.ctx->from_rational(Rat(t.m22))).is_zero();
}

bool majorant_check_exact(const BinaryCubicForm& f) {
    return majorant_check_exact(f, NumberFieldContext::create(f));
}

}  // namespace cubeshape
