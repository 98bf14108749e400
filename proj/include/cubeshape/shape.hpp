#pragma once

#include <array>
#include <utility>

#include "cubeshape/cubic_form.hpp"
#include "cubeshape/number_field.hpp"
#include "cubeshape/quadform.hpp"

namespace cubeshape {

// Gram matrix of the projected Minkowski form in the basis alpha-perp,
// beta-perp; positive definite. As a quadratic form the coefficients are
// (g11, 2 g12, g22).
struct ShapeGram {
    ContextPtr ctx;
    FieldElement g11, g12, g22;
};

struct ShapePoint {
    FieldElement x_exact;       // g12 / g11
    FieldElement y_squared;     // (g11 g22 - g12^2) / g11^2
    double x_float, y_float;
};

// Gram matrix of the Minkowski form on the basis 1, alpha, beta (symmetric,
// entries in Q(theta)); for tests and cross-checks.
std::array<std::array<FieldElement, 3>, 3> minkowski_gram(const BinaryCubicForm& f,
                                                          const ContextPtr& ctx);

ShapeGram shape_gram(const BinaryCubicForm& f, const ContextPtr& ctx);
ShapeGram shape_gram(const BinaryCubicForm& f);

// Route-independent cross-check: expand the perp Gram bilinearly from the
// full Minkowski Gram via alpha-perp = 3 alpha + b, beta-perp = 3 beta - c.
ShapeGram shape_gram_via_minkowski(const BinaryCubicForm& f, const ContextPtr& ctx);

ShapePoint shape_point(const ShapeGram& sg);

// GL2(Z)-reduction into {0 <= x <= 1/2, x^2 + y^2 >= 1} with exact sign
// decisions; returns the reduced Gram and the transform used.
std::pair<ShapeGram, Mat2> reduce_to_gauss(const ShapeGram& sg);

// (is_rational, exact value of Re(sh)) for irreducible complex F
std::pair<bool, FieldElement> re_shape_is_rational(const BinaryCubicForm& f);

enum class BoundaryPosition { interior, on_x_equals_0, on_x_equals_half, on_unit_circle };
std::string boundary_name(BoundaryPosition b);

BoundaryPosition boundary_test(const BinaryCubicForm& f);

// exact identity 2 p t_M - q s_M + 2 u r_M = 0 with (p,q,u) the Hessian and
// (r_M, s_M, t_M) the shape form coefficients
bool on_geodesic_certificate(const BinaryCubicForm& f);
bool on_geodesic_certificate(const BinaryCubicForm& f, const ContextPtr& ctx);

// M T^-1 M = T over Q(theta), M the shape Gram, T the trace-zero Gram
bool majorant_check_exact(const BinaryCubicForm& f);
bool majorant_check_exact(const BinaryCubicForm& f, const ContextPtr& ctx);

}  // namespace cubeshape
