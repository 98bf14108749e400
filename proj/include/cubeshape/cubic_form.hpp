#pragma once

#include <array>
#include <string>
#include <vector>

#include "cubeshape/int_types.hpp"
#include "cubeshape/quadform.hpp"

namespace cubeshape {

// F(x,y) = a x^3 + b x^2 y + c x y^2 + d y^3, stored as given (no silent
// normalization; equivalence is always explicit through act).
struct BinaryCubicForm {
    Int a, b, c, d;

    Int content() const;
    std::string str() const;
    friend bool operator==(const BinaryCubicForm& f, const BinaryCubicForm& g) {
        return f.a == g.a && f.b == g.b && f.c == g.c && f.d == g.d;
    }
    friend bool operator<(const BinaryCubicForm& f, const BinaryCubicForm& g);
};

// b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d
Int disc(const BinaryCubicForm& f);

// Hessian covariant (b^2 - 3ac, bc - 9ad, c^2 - 3bd)
BQF hessian(const BinaryCubicForm& f);

// Gram matrix of the trace-zero form, [[6p, 3q], [3q, 6u]] = Gram of 6 H_F
struct SymMat2 {
    Int m11, m12, m22;
};
SymMat2 trace_zero_gram(const BinaryCubicForm& f);

// primitive trace-zero form and the content of the Hessian
std::pair<BQF, Int> primitive_tzf(const BinaryCubicForm& f);

// twisted action g.F(x,y) = F((x,y) g) / det g, |det g| = 1
BinaryCubicForm act(const Mat2& g, const BinaryCubicForm& f);

// no linear factor over Q
bool is_irreducible(const BinaryCubicForm& f);

// maximality of R_F at p: fails iff p | content(F) or some projective root of
// F mod p, moved to [1:0], gives p^2 | a' and p | b'
bool is_maximal_at(const BinaryCubicForm& f, const Int& p);

// maximal at every prime (only p with p^2 | disc can fail)
bool is_maximal(const BinaryCubicForm& f);

// fundamental discriminant of Q(sqrt(disc F)), disc(F) < 0, F irreducible
Int resolvent_disc(const BinaryCubicForm& f);

enum class ThreeClass { unramified_or_split, tame, wild, invalid };

// ord_3(disc): 0 -> unramified_or_split, 1 -> tame, 3/4/5 -> wild.
// Other values are impossible for maximal rings and raise.
ThreeClass classify_3(const BinaryCubicForm& f);

// Same classification but returning `invalid` instead of throwing (used to
// tag enumerated non-maximal orders).
ThreeClass classify_3_relaxed(const BinaryCubicForm& f);

std::string three_class_name(ThreeClass c);

// Structure constants of the cubic ring R_F on the basis 1, alpha, beta:
// alpha beta = -ad, alpha^2 = -ac - b alpha + a beta, beta^2 = -bd - d alpha + c beta.
struct CubicRingStructure {
    BinaryCubicForm form;
    // multiply elements written as (x0, x1, x2) = x0 + x1 alpha + x2 beta
    std::array<Int, 3> multiply(const std::array<Int, 3>& x, const std::array<Int, 3>& y) const;
    Int trace_alpha() const { return -form.b; }
    Int trace_beta() const { return form.c; }
};

}  // namespace cubeshape
