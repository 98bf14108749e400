#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubeshape {

// Arbitrary-precision integers and rationals. mpq_class keeps gcd-reduced
// coordinates with positive denominator, which is exactly the Rational
// invariant we need.
using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// floor(a/b), any signs, b != 0
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    if (b > 0)
        mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    else {
        Int na = -a, nb = -b;
        mpz_fdiv_q(q.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
    }
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a - m * floor_div(a, m);
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (sgn(den) == 0) throw std::domain_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

// nearest integer, ties toward +infinity
inline Int round_nearest(const Rat& q) {
    return rat_floor(q + Rat(1, 2));
}

inline double to_double(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }
inline double to_double(const Int& n) { return mpz_get_d(n.get_mpz_t()); }

inline long to_long_checked(const Int& n) {
    if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return n.get_si();
}

inline std::int64_t to_i64_checked(const Int& n) {
    return static_cast<std::int64_t>(to_long_checked(n));
}

// multiplicity of p in n (n != 0)
inline int ord_p(const Int& n, const Int& p) {
    if (sgn(n) == 0) throw std::domain_error("ord_p: zero argument");
    Int rem, m = abs(n);
    return static_cast<int>(mpz_remove(rem.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace cubeshape
