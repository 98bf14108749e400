#include "cubeshape/cubic_form.hpp"

#include <sstream>

#include "cubeshape/factor.hpp"

namespace cubeshape {

Int BinaryCubicForm::content() const {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    return g;
}

std::string BinaryCubicForm::str() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << "," << d << ")";
    return os.str();
}

bool operator<(const BinaryCubicForm& f, const BinaryCubicForm& g) {
    if (f.a != g.a) return f.a < g.a;
    if (f.b != g.b) return f.b < g.b;
    if (f.c != g.c) return f.c < g.c;
    return f.d < g.d;
}

Int disc(const BinaryCubicForm& f) {
    const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d +
           18 * a * b * c * d;
}

BQF hessian(const BinaryCubicForm& f) {
    const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    return {b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d};
}

SymMat2 trace_zero_gram(const BinaryCubicForm& f) {
    BQF h = hessian(f);
    return {6 * h.r, 3 * h.s, 6 * h.t};
}

std::pair<BQF, Int> primitive_tzf(const BinaryCubicForm& f) {
    BQF h = hessian(f);
    Int g = h.content();
    if (sgn(g) == 0) throw std::domain_error("primitive_tzf: zero Hessian (degenerate form)");
    return {{h.r / g, h.s / g, h.t / g}, g};
}

BinaryCubicForm act(const Mat2& g, const BinaryCubicForm& f) {
    if (!g.unimodular()) throw std::domain_error("act: matrix must be unimodular");
    // F((x,y) g) with (x,y) g = (p x + r y, q x + s y)
    const Int &p = g.a, &q = g.b, &r = g.c, &s = g.d;
    const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d;
    Int a2 = a * p * p * p + b * p * p * q + c * p * q * q + d * q * q * q;
    Int b2 = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) + c * (q * q * r + 2 * p * q * s) +
             3 * d * q * q * s;
    Int c2 = 3 * a * p * r * r + b * (r * r * q + 2 * p * r * s) + c * (s * s * p + 2 * q * r * s) +
             3 * d * q * s * s;
    Int d2 = a * r * r * r + b * r * r * s + c * r * s * s + d * s * s * s;
    Int dt = g.det();
    return {a2 / dt, b2 / dt, c2 / dt, d2 / dt};
}

bool is_irreducible(const BinaryCubicForm& f) {
    if (sgn(f.a) == 0) return false;  // y divides
    if (sgn(f.d) == 0) return false;  // x divides F(x,1)
    // rational root test on a x^3 + b x^2 + c x + d: roots p/q with p | d, q | a
    auto divisors = [](const Int& n) {
        std::vector<Int> out;
        Int m = abs(n);
        for (Int i = 1; i * i <= m; ++i)
            if (m % i == 0) {
                out.push_back(i);
                if (i * i != m) out.push_back(m / i);
            }
        return out;
    };
    for (const Int& p : divisors(f.d))
        for (const Int& q : divisors(f.a)) {
            Int g;
            mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            if (g != 1) continue;
            for (int sp : {1, -1}) {
                Int num = sp * p;
                // a (p/q)^3 + b (p/q)^2 + c (p/q) + d = 0  <=>  F(p, q) = 0
                Int val = f.a * num * num * num + f.b * num * num * q + f.c * num * q * q +
                          f.d * q * q * q;
                if (sgn(val) == 0) return false;
            }
        }
    return true;
}

bool is_maximal_at(const BinaryCubicForm& f, const Int& p) {
    if (!is_prime(p)) throw std::domain_error("is_maximal_at: p must be prime");
    if (f.content() % p == 0) return false;
    // roots of F mod p in P^1(F_p): [1 : k] for k = 0..p-1 and [0 : 1]
    auto check_root = [&](const Int& x0, const Int& y0) {
        // unimodular g with first row (x0, y0)
        Mat2 g;
        if (sgn(y0) == 0) {
            g = {x0, 0, 0, 1};  // x0 = 1 here
        } else if (sgn(x0) == 0) {
            g = {0, y0, -1, 0};  // y0 = 1
        } else {
            Int gg, u, v;
            mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), x0.get_mpz_t(),
                       y0.get_mpz_t());
            // x0 u + y0 v = 1 -> det [[x0, y0], [-v, u]] = x0 u + y0 v = 1
            g = {x0, y0, -v, u};
        }
        BinaryCubicForm tf = act(g, f);
        return tf.a % (p * p) == 0 && tf.b % p == 0;
    };
    for (Int k = 0; k < p; ++k) {
        Int val = mod_floor(f.a + f.b * k + f.c * k * k + f.d * k * k * k, p);  // F(1, k) mod p
        if (sgn(val) == 0 && check_root(1, k)) return false;
    }
    if (mod_floor(f.d, p) == 0 && check_root(0, 1)) return false;  // [0 : 1]
    return true;
}

bool is_maximal(const BinaryCubicForm& f) {
    Int D = disc(f);
    if (sgn(D) == 0) throw std::domain_error("is_maximal: zero discriminant");
    for (const auto& [p, e] : factor_abs(D)) {
        if (e >= 2 && !is_maximal_at(f, p)) return false;
    }
    return true;
}

Int resolvent_disc(const BinaryCubicForm& f) {
    Int D = disc(f);
    if (sgn(D) >= 0) throw std::domain_error("resolvent_disc: need disc < 0 (complex cubic)");
    if (!is_irreducible(f)) throw std::domain_error("resolvent_disc: form must be irreducible");
    Int m = squarefree_part(D);
    return mod_floor(m, 4) == 1 ? m : 4 * m;
}

ThreeClass classify_3_relaxed(const BinaryCubicForm& f) {
    Int D = disc(f);
    if (sgn(D) == 0) throw std::domain_error("classify_3: zero discriminant");
    int v = ord_p(D, 3);
    if (v == 0) return ThreeClass::unramified_or_split;
    if (v == 1) return ThreeClass::tame;
    if (v >= 3 && v <= 5) return ThreeClass::wild;
    return ThreeClass::invalid;
}

ThreeClass classify_3(const BinaryCubicForm& f) {
    ThreeClass c = classify_3_relaxed(f);
    if (c == ThreeClass::invalid)
        throw std::domain_error("classify_3: ord_3(disc) = " + std::to_string(ord_p(disc(f), 3)) +
                                " is impossible for a maximal cubic ring");
    return c;
}

std::string three_class_name(ThreeClass c) {
    switch (c) {
        case ThreeClass::unramified_or_split: return "unramified";
        case ThreeClass::tame: return "tame";
        case ThreeClass::wild: return "wild";
        case ThreeClass::invalid: return "invalid";
    }
    return "?";
}

std::array<Int, 3> CubicRingStructure::multiply(const std::array<Int, 3>& x,
                                                const std::array<Int, 3>& y) const {
    const Int &a = form.a, &b = form.b, &c = form.c, &d = form.d;
    // (x0 + x1 A + x2 B)(y0 + y1 A + y2 B) with
    // A B = -ad, A^2 = -ac - b A + a B, B^2 = -bd - d A + c B
    Int p00 = x[0] * y[0];
    Int pA = x[0] * y[1] + x[1] * y[0];
    Int pB = x[0] * y[2] + x[2] * y[0];
    Int pAA = x[1] * y[1];
    Int pBB = x[2] * y[2];
    Int pAB = x[1] * y[2] + x[2] * y[1];
    std::array<Int, 3> out;
    out[0] = p00 - pAA * a * c - pBB * b * d - pAB * a * d;
    out[1] = pA - pAA * b - pBB * d;
    out[2] = pB + pAA * a + pBB * c;
    return out;
}

}  // namespace cubeshape
