#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubeshape/int_types.hpp"

namespace cubeshape {

// 2x2 integer matrix [[a,b],[c,d]].
struct Mat2 {
    Int a, b, c, d;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    Int det() const { return a * d - b * c; }
    bool unimodular() const { return abs(det()) == 1; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    // inverse of a matrix with det = +-1
    Mat2 inverse() const;
    Mat2 pow(int n) const;  // n may be negative for unimodular matrices
};

// Binary quadratic form r x^2 + s xy + t y^2.
struct BinaryQuadraticForm {
    Int r, s, t;
    Int disc() const { return s * s - 4 * r * t; }
    // Q(x, y)
    Int eval(const Int& x, const Int& y) const { return r * x * x + s * x * y + t * y * y; }
    BinaryQuadraticForm adjoint() const { return {t, -s, r}; }
    Int content() const;
    friend bool operator==(const BinaryQuadraticForm& p, const BinaryQuadraticForm& q) {
        return p.r == q.r && p.s == q.s && p.t == q.t;
    }
    friend bool operator<(const BinaryQuadraticForm& p, const BinaryQuadraticForm& q) {
        if (p.r != q.r) return p.r < q.r;
        if (p.s != q.s) return p.s < q.s;
        return p.t < q.t;
    }
    std::string str() const;
};
using BQF = BinaryQuadraticForm;

// Substitution action (g.Q)(x,y) = Q((x,y) g).
BQF act(const Mat2& g, const BQF& q);

// Exact element a + b sqrt(D) of Q(sqrt(D)), D > 0 nonsquare.
struct QuadSurd {
    Rat a, b;
    Int D;

    QuadSurd(Rat a_, Rat b_, Int D_) : a(std::move(a_)), b(std::move(b_)), D(std::move(D_)) {}
    int sign() const;
    double value() const;
    friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y);
    friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y);
    friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y);
    QuadSurd operator-() const { return {-a, -b, D}; }
    QuadSurd pow(int n) const;  // n >= 0
};

struct PellSolution {
    Int D;
    Int U0, W0;  // minimal positive solution of U^2 - D W^2 = 4
    double eps0_float;
    double log_eps0;
};

// Minimal solution of the Pellian u^2 - D w^2 = 4, D > 0 nonsquare,
// via the continued fraction expansion of the relevant square root.
PellSolution pell_fundamental(const Int& D);

// Generator M(U0, W0) of SO_Q(Z) up to sign; preserves Q under substitution.
Mat2 so_generator(const BQF& q);

// --- reduction theory of indefinite forms (D > 0 nonsquare) ---

bool is_reduced_indefinite(const BQF& q);

// reduced form g.q together with the transform g (det +1)
std::pair<BQF, Mat2> reduce_indefinite(const BQF& q);

// cycle of reduced forms properly equivalent to q, rotated to start at the
// lexicographically smallest element
std::vector<BQF> reduce_indefinite_cycle(const BQF& q);

// g with g.q1 = q2 if properly equivalent, else nullopt
std::optional<Mat2> proper_transform(const BQF& q1, const BQF& q2);

enum class EquivMode { proper, improper_allowed };

// proper: SL2(Z)-equivalence. improper_allowed additionally identifies q2
// with its reflection by w = diag(-1,1) and with -q2 (the class groupings
// used for trace-zero forms; both reflections leave the geodesic unchanged).
bool equivalent(const BQF& q1, const BQF& q2, EquivMode mode);

struct QuadClass {
    Int D;
    BQF rep;         // lexicographically smallest reduced member
    BQF normalized;  // properly equivalent representative with r, t > 0
    bool ambiguous;  // [Q]_1 == [wQ]_1
    std::string id;  // "D{D}#{k}"
    std::vector<BQF> reduced_forms;
    int proper_cycles;
};

// All classes of primitive indefinite forms of discriminant D, with proper
// cycles merged under reflection and sign.
std::vector<QuadClass> classes_of_disc(const Int& D);

// properly equivalent representative with r > 0 and t > 0, plus transform
std::pair<BQF, Mat2> normalize_rep(const BQF& q);

struct GeodesicContext {
    BQF q;  // normalized: r > 0, t > 0
    Int D;
    PellSolution pell;
    Mat2 gen;                 // so_generator(q)
    Mat2 gen3, gen3_inv;      // gen^3 and gen^-3 (the twisted cubic action of the generator)
    QuadSurd eps0, eps6;      // exact eps0 and eps0^6
    double sqrtD;
    double theta_plus, theta_minus;  // (s +- sqrt(D)) / (2t)
    double rho_plus, rho_minus;      // (-s +- sqrt(D)) / (2r), endpoints of gamma_Q
    double log_eps0;
    double period;  // 2 log eps0
};

GeodesicContext geodesic_context(const BQF& q);

// Flow coordinate of a point z expected on gamma_Q: returns (tau in [0,1),
// residual); throws if residual > 1e-6.
std::pair<double, double> flow_coordinate(const GeodesicContext& ctx, std::complex<double> z);

// n points along one period of [gamma_Q], reduced to the Gauss domain
std::vector<std::complex<double>> geodesic_arc_samples(const GeodesicContext& ctx, int n);

// float reduction to the GL2(Z) fundamental domain {0 <= x <= 1/2, |z| >= 1}
std::complex<double> gauss_reduce_float(std::complex<double> z);

// Fractional linear action z -> (g^-1)^T . z (conjugate first if det g < 0).
std::complex<double> moebius_star(const Mat2& g, std::complex<double> z);

}  // namespace cubeshape
