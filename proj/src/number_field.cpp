#include "cubeshape/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cubeshape/cubic_form.hpp"

namespace cubeshape {

namespace {

// value of the monic cubic x^3 + m2 x^2 + m1 x + m0 at a rational point
Rat eval_min_poly(const std::array<Rat, 3>& mp, const Rat& x) {
    return ((x + mp[2]) * x + mp[1]) * x + mp[0];
}

struct Interval {
    Rat lo, hi;
};

Interval mul(const Interval& x, const Interval& y) {
    Rat a = x.lo * y.lo, b = x.lo * y.hi, c = x.hi * y.lo, d = x.hi * y.hi;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

Interval add(const Interval& x, const Interval& y) { return {x.lo + y.lo, x.hi + y.hi}; }

Interval scale(const Rat& q, const Interval& x) {
    if (sgn(q) >= 0) return {q * x.lo, q * x.hi};
    return {q * x.hi, q * x.lo};
}

// e0 + e1 x + e2 x^2 over the interval
Interval eval_element(const std::array<Rat, 3>& e, const Interval& x) {
    Interval acc{e[0], e[0]};
    acc = add(acc, scale(e[1], x));
    acc = add(acc, scale(e[2], mul(x, x)));
    return acc;
}

}  // namespace

std::shared_ptr<const NumberFieldContext> NumberFieldContext::create(const BinaryCubicForm& f) {
    if (!is_irreducible(f))
        throw std::domain_error("NumberFieldContext: form must be irreducible");
    if (sgn(disc(f)) >= 0)
        throw std::domain_error("NumberFieldContext: form must be a complex cubic (disc < 0)");
    auto ctx = std::shared_ptr<NumberFieldContext>(new NumberFieldContext());
    ctx->a_ = f.a;
    ctx->b_ = f.b;
    ctx->c_ = f.c;
    ctx->d_ = f.d;
    // alpha = a theta satisfies x^3 + b x^2 + ac x + a^2 d
    ctx->mp_ = {Rat(f.a * f.a * f.d), Rat(f.a * f.c), Rat(f.b)};
    // Cauchy bound: the unique real root lies in (-M, M)
    Rat m0 = abs(ctx->mp_[0]), m1 = abs(ctx->mp_[1]), m2 = abs(ctx->mp_[2]);
    Rat m = std::max(std::max(m0, m1), m2) + 1;
    ctx->lo_ = -m;
    ctx->hi_ = m;
    if (!(sgn(eval_min_poly(ctx->mp_, ctx->lo_)) < 0 && sgn(eval_min_poly(ctx->mp_, ctx->hi_)) > 0))
        throw std::logic_error("NumberFieldContext: root bound failed");
    for (int i = 0; i < 8; ++i) ctx->refine();
    return ctx;
}

std::pair<Rat, Rat> NumberFieldContext::interval() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {lo_, hi_};
}

void NumberFieldContext::refine() const {
    std::lock_guard<std::mutex> lock(mu_);
    Rat mid = (lo_ + hi_) / 2;
    // irreducible over Q, so the value at a rational midpoint is never 0
    if (sgn(eval_min_poly(mp_, mid)) < 0)
        lo_ = mid;
    else
        hi_ = mid;
}

FieldElement NumberFieldContext::zero() const {
    return {shared_from_this(), {Rat(0), Rat(0), Rat(0)}};
}
FieldElement NumberFieldContext::one() const {
    return {shared_from_this(), {Rat(1), Rat(0), Rat(0)}};
}
FieldElement NumberFieldContext::from_rational(const Rat& q) const {
    return {shared_from_this(), {q, Rat(0), Rat(0)}};
}
FieldElement NumberFieldContext::alpha() const {
    return {shared_from_this(), {Rat(0), Rat(1), Rat(0)}};
}
FieldElement NumberFieldContext::theta() const {
    return {shared_from_this(), {Rat(0), make_rat(Int(1), a_), Rat(0)}};
}
FieldElement NumberFieldContext::theta_inv() const {
    return element(basis_convert({Rat(1), Rat(0), Rat(0)}, BasisDirection::from_theta_basis, *this));
}
FieldElement NumberFieldContext::element(const std::array<Rat, 3>& coeffs) const {
    return {shared_from_this(), coeffs};
}

namespace {

void require_same_context(const FieldElement& x, const FieldElement& y) {
    if (x.context() != y.context())
        throw std::invalid_argument("field elements belong to different contexts");
}

}  // namespace

bool FieldElement::is_zero() const {
    return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0;
}

bool FieldElement::is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0; }

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    require_same_context(x, y);
    return {x.context(),
            {x.coeffs()[0] + y.coeffs()[0], x.coeffs()[1] + y.coeffs()[1],
             x.coeffs()[2] + y.coeffs()[2]}};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    require_same_context(x, y);
    return {x.context(),
            {x.coeffs()[0] - y.coeffs()[0], x.coeffs()[1] - y.coeffs()[1],
             x.coeffs()[2] - y.coeffs()[2]}};
}

FieldElement FieldElement::operator-() const { return {ctx_, {-c_[0], -c_[1], -c_[2]}}; }

FieldElement operator*(const Rat& q, const FieldElement& x) {
    return {x.context(), {q * x.coeffs()[0], q * x.coeffs()[1], q * x.coeffs()[2]}};
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    require_same_context(x, y);
    const auto& a = x.coeffs();
    const auto& b = y.coeffs();
    const auto& mp = x.context()->min_poly();
    // raw product coefficients up to x^4, then reduce with
    // x^3 = -(m2 x^2 + m1 x + m0), x^4 = (m2^2 - m1) x^2 + (m2 m1 - m0) x + m2 m0
    Rat p0 = a[0] * b[0];
    Rat p1 = a[0] * b[1] + a[1] * b[0];
    Rat p2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
    Rat p3 = a[1] * b[2] + a[2] * b[1];
    Rat p4 = a[2] * b[2];
    p0 += -p3 * mp[0] + p4 * mp[2] * mp[0];
    p1 += -p3 * mp[1] + p4 * (mp[2] * mp[1] - mp[0]);
    p2 += -p3 * mp[2] + p4 * (mp[2] * mp[2] - mp[1]);
    return {x.context(), {p0, p1, p2}};
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("FieldElement::inverse: division by zero");
    // extended Euclid in Q[x] for gcd(f, e) with f the minimal polynomial
    using Poly = std::vector<Rat>;
    auto deg = [](const Poly& p) {
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            if (sgn(p[i]) != 0) return i;
        return -1;
    };
    auto trim = [&](Poly& p) { p.resize(std::max(deg(p) + 1, 1)); };
    const auto& mp = ctx_->min_poly();
    Poly r0 = {mp[0], mp[1], mp[2], Rat(1)};
    Poly r1 = {c_[0], c_[1], c_[2]};
    trim(r1);
    Poly s0 = {Rat(0)}, s1 = {Rat(1)};  // cofactors of the element
    while (deg(r1) > 0) {
        // divide r0 by r1
        Poly q(std::max(deg(r0) - deg(r1) + 1, 1), Rat(0));
        Poly rem = r0;
        while (deg(rem) >= deg(r1)) {
            int k = deg(rem) - deg(r1);
            Rat coef = rem[deg(rem)] / r1[deg(r1)];
            q[k] += coef;
            for (int i = 0; i <= deg(r1); ++i) rem[i + k] -= coef * r1[i];
            trim(rem);
            if (deg(rem) < 0) break;
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q s1)
        Poly qs(q.size() + s1.size(), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        Poly s2(std::max(s0.size(), qs.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        trim(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (deg(r1) != 0)
        throw std::logic_error("FieldElement::inverse: reducible minimal polynomial");
    Rat unit = r1[0];
    std::array<Rat, 3> out{Rat(0), Rat(0), Rat(0)};
    for (size_t i = 0; i < s1.size() && i < 3; ++i) out[i] = s1[i] / unit;
    if (s1.size() > 3) throw std::logic_error("FieldElement::inverse: cofactor degree too large");
    FieldElement inv{ctx_, out};
    return inv;
}

int FieldElement::sign() const {
    if (is_zero()) return 0;
    // a nonzero polynomial of degree < 3 in theta cannot vanish, so the
    // interval eventually excludes 0
    for (int iter = 0;; ++iter) {
        auto [lo, hi] = ctx_->interval();
        Interval v = eval_element(c_, {lo, hi});
        if (sgn(v.lo) > 0) return 1;
        if (sgn(v.hi) < 0) return -1;
        ctx_->refine();
        if (iter > 100000) throw std::logic_error("FieldElement::sign: refinement stalled");
    }
}

double FieldElement::to_double(const Rat& abs_err) const {
    if (sgn(abs_err) <= 0) throw std::domain_error("to_double: abs_err must be positive");
    if (is_zero()) return 0.0;
    for (int iter = 0;; ++iter) {
        auto [lo, hi] = ctx_->interval();
        Interval v = eval_element(c_, {lo, hi});
        if (v.hi - v.lo < abs_err) return cubeshape::to_double((v.lo + v.hi) / 2);
        ctx_->refine();
        if (iter > 100000) throw std::logic_error("FieldElement::to_double: refinement stalled");
    }
}

double FieldElement::to_double(double abs_err) const {
    Rat e(abs_err);
    e.canonicalize();
    return to_double(e);
}

std::array<Rat, 3> basis_convert(const std::array<Rat, 3>& coeffs, BasisDirection dir,
                                 const NumberFieldContext& ctx) {
    const Int &a = ctx.form_a(), &b = ctx.form_b(), &c = ctx.form_c(), &d = ctx.form_d();
    if (sgn(d) == 0)
        throw std::domain_error("basis_convert: d = 0, theta^-1 formula undefined");
    if (dir == BasisDirection::from_theta_basis) {
        // u theta^-1 + v + w theta with theta^-1 = -(alpha^2 + b alpha + ac)/(ad)
        const Rat &u = coeffs[0], &v = coeffs[1], &w = coeffs[2];
        Rat ad = Rat(a * d);
        return {v - u * make_rat(c, d), -u * make_rat(b, a * d) + w * make_rat(Int(1), a),
                -u / ad};
    }
    // p0 + p1 alpha + p2 alpha^2 with alpha = a theta,
    // alpha^2 = -ad theta^-1 - ac - ab theta
    const Rat &p0 = coeffs[0], &p1 = coeffs[1], &p2 = coeffs[2];
    return {-p2 * Rat(a * d), p0 - p2 * Rat(a * c), p1 * Rat(a) - p2 * Rat(a * b)};
}

}  // namespace cubeshape
