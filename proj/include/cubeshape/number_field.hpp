#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <utility>

#include "cubeshape/int_types.hpp"

namespace cubeshape {

struct BinaryCubicForm;
class FieldElement;

// Exact arithmetic in Q(theta), theta the unique real root of F(x,1) for an
// irreducible complex cubic form F. Internally elements live in the power
// basis 1, alpha, alpha^2 of alpha = a*theta, whose minimal polynomial
// x^3 + b x^2 + ac x + a^2 d is monic (so multiplication needs no
// denominators). theta^-1, 1, theta conversions are exact and confined to
// basis_convert.
class NumberFieldContext : public std::enable_shared_from_this<NumberFieldContext> {
  public:
    static std::shared_ptr<const NumberFieldContext> create(const BinaryCubicForm& f);

    // coefficients of the monic minimal polynomial x^3 + m2 x^2 + m1 x + m0
    const std::array<Rat, 3>& min_poly() const { return mp_; }
    const Int& form_a() const { return a_; }
    const Int& form_b() const { return b_; }
    const Int& form_c() const { return c_; }
    const Int& form_d() const { return d_; }

    // current isolating interval for the real root of the minimal polynomial
    std::pair<Rat, Rat> interval() const;
    void refine() const;  // halve the isolating interval

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_rational(const Rat& q) const;
    FieldElement alpha() const;
    FieldElement theta() const;      // alpha / a
    FieldElement theta_inv() const;  // -(alpha^2 + b alpha + ac) / (ad)
    FieldElement element(const std::array<Rat, 3>& coeffs) const;

  private:
    NumberFieldContext() = default;
    Int a_, b_, c_, d_;
    std::array<Rat, 3> mp_;  // m0, m1, m2
    mutable Rat lo_, hi_;
    mutable std::mutex mu_;
};

using ContextPtr = std::shared_ptr<const NumberFieldContext>;

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(ContextPtr ctx, std::array<Rat, 3> coeffs)
        : ctx_(std::move(ctx)), c_(std::move(coeffs)) {}

    const ContextPtr& context() const { return ctx_; }
    const std::array<Rat, 3>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;  // no alpha or alpha^2 component

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    FieldElement operator-() const;
    friend FieldElement operator*(const Rat& q, const FieldElement& x);

    FieldElement inverse() const;  // throws on zero

    // exact sign of the real number x(theta)
    int sign() const;

    // floating value within abs_err of x(theta)
    double to_double(const Rat& abs_err) const;
    double to_double(double abs_err = 1e-13) const;

  private:
    ContextPtr ctx_;
    std::array<Rat, 3> c_{Rat(0), Rat(0), Rat(0)};
};

enum class BasisDirection { from_theta_basis, to_theta_basis };

// Exact change of coordinates between the basis theta^-1, 1, theta and the
// internal power basis 1, alpha, alpha^2 (uses theta^-1 = -(a theta^2 + b
// theta + c)/d, so d != 0 is required).
std::array<Rat, 3> basis_convert(const std::array<Rat, 3>& coeffs, BasisDirection dir,
                                 const NumberFieldContext& ctx);

}  // namespace cubeshape
