#include "cubeshape/factor.hpp"

#include <algorithm>
#include <map>

namespace cubeshape {

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

// Pollard rho (Brent variant). n odd composite, not a prime power of interest.
Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEul);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int c = rng.get_z_range(n - 3) + 1;
        Int x = rng.get_z_range(n - 2) + 1;
        Int y = x, d = 1;
        Int saved_y = y;
        long power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = (y * y + c) % n;
            ++lam;
            Int diff = x > y ? x - y : y - x;
            if (sgn(diff) == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            (void)saved_y;
        }
        if (d != 1 && d != n) return d;
    }
    throw std::runtime_error("factor_abs: unfactored composite part " + n.get_str());
}

void factor_rec(const Int& n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_abs(const Int& n) {
    if (sgn(n) == 0) throw std::domain_error("factor_abs: zero argument");
    Int m = abs(n);
    std::map<Int, int> acc;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            acc[Int(p)] += 1;
            m /= p;
        }
    }
    for (Int p = 41; p * p <= m && p < 100000; p += 2) {
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            acc[p] += 1;
            m /= p;
        }
    }
    if (m > 1) factor_rec(m, acc);
    return {acc.begin(), acc.end()};
}

Int squarefree_part(const Int& n) {
    Int sf = 1;
    for (const auto& [p, e] : factor_abs(n))
        if (e % 2 == 1) sf *= p;
    return sgn(n) < 0 ? -sf : sf;
}

}  // namespace cubeshape
