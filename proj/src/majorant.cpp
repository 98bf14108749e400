#include "cubeshape/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cubeshape {

namespace {

using Cplx = std::complex<double>;

// squarefree test: gcd(f, f') constant, over Q
bool is_squarefree(const std::vector<Int>& coeffs) {
    using Poly = std::vector<Rat>;
    int n = static_cast<int>(coeffs.size());
    Poly f(n + 1);
    for (int i = 0; i < n; ++i) f[i] = Rat(coeffs[i]);
    f[n] = Rat(1);
    Poly df(n);
    for (int i = 1; i <= n; ++i) df[i - 1] = Rat(i) * f[i];
    auto deg = [](const Poly& p) {
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            if (sgn(p[i]) != 0) return i;
        return -1;
    };
    Poly r0 = f, r1 = df;
    while (deg(r1) > 0) {
        Poly rem = r0;
        while (deg(rem) >= deg(r1)) {
            int k = deg(rem) - deg(r1);
            Rat coef = rem[deg(rem)] / r1[deg(r1)];
            for (int i = 0; i <= deg(r1); ++i) rem[i + k] -= coef * r1[i];
            rem.resize(std::max(deg(rem) + 1, 1));
        }
        r0 = r1;
        r1 = rem;
    }
    return deg(r1) == 0 || deg(r0) == 0;
}

Cplx horner(const std::vector<Int>& coeffs, Cplx x) {
    Cplx v(1.0, 0.0);
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        v = v * x + Cplx(to_double(coeffs[i]), 0.0);
    return v;
}

}  // namespace

std::vector<Cplx> polynomial_roots(const std::vector<Int>& coeffs, double tol) {
    int n = static_cast<int>(coeffs.size());
    if (n < 1) throw std::domain_error("polynomial_roots: degree must be >= 1");
    if (!is_squarefree(coeffs)) throw std::domain_error("polynomial_roots: repeated roots");
    double bound = 1.0;
    for (const Int& c : coeffs) bound = std::max(bound, std::abs(to_double(c)));
    bound += 1.0;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(-0.1, 0.1);
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<Cplx> z(n);
        Cplx seed(0.4, 0.9);
        Cplx w(1.0, 0.0);
        for (int i = 0; i < n; ++i) {
            w *= seed;
            z[i] = bound * w / std::abs(w) * (0.5 + 0.1 * i);
            if (attempt > 0) z[i] += Cplx(unif(rng), unif(rng)) * bound;
        }
        bool converged = false;
        for (int iter = 0; iter < 2000; ++iter) {
            double delta = 0.0;
            for (int i = 0; i < n; ++i) {
                Cplx denom(1.0, 0.0);
                for (int j = 0; j < n; ++j)
                    if (j != i) denom *= (z[i] - z[j]);
                if (std::abs(denom) < 1e-300) {
                    delta = 1e9;
                    break;
                }
                Cplx step = horner(coeffs, z[i]) / denom;
                z[i] -= step;
                delta = std::max(delta, std::abs(step));
            }
            if (delta < tol * 1e-3) {
                converged = true;
                break;
            }
            if (delta > 1e8) break;
        }
        if (!converged) continue;
        double minsep = 1e300;
        double maxres = 0.0;
        for (int i = 0; i < n; ++i) {
            maxres = std::max(maxres, std::abs(horner(coeffs, z[i])));
            for (int j = i + 1; j < n; ++j) minsep = std::min(minsep, std::abs(z[i] - z[j]));
        }
        if (n > 1 && minsep < tol) continue;
        if (maxres > tol * std::pow(bound, n)) continue;
        // pair near-real roots down to the axis and sort deterministically
        for (auto& r : z)
            if (std::abs(r.imag()) < 1e-12 * std::max(1.0, std::abs(r.real())))
                r = Cplx(r.real(), 0.0);
        std::sort(z.begin(), z.end(), [](const Cplx& p, const Cplx& q) {
            if (p.real() != q.real()) return p.real() < q.real();
            return p.imag() < q.imag();
        });
        return z;
    }
    throw std::runtime_error("polynomial_roots: iteration did not converge");
}

EmbeddingMatrix embedding_matrix(const std::vector<Int>& coeffs) {
    auto roots = polynomial_roots(coeffs);
    int n = static_cast<int>(coeffs.size());
    EmbeddingMatrix em;
    em.degree = n;
    em.a.assign(n, std::vector<Cplx>(n));
    for (int i = 0; i < n; ++i) {
        Cplx p(1.0, 0.0);
        for (int j = 0; j < n; ++j) {
            em.a[i][j] = p;
            p *= roots[i];
        }
    }
    return em;
}

namespace {

using Matrix = std::vector<std::vector<Cplx>>;

Matrix matmul(const Matrix& x, const Matrix& y) {
    size_t n = x.size(), m = y[0].size(), k = y.size();
    Matrix out(n, std::vector<Cplx>(m, Cplx(0, 0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            for (size_t j = 0; j < m; ++j) out[i][j] += x[i][l] * y[l][j];
    return out;
}

Matrix transpose(const Matrix& x, bool conjugate) {
    size_t n = x.size(), m = x[0].size();
    Matrix out(m, std::vector<Cplx>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) out[j][i] = conjugate ? std::conj(x[i][j]) : x[i][j];
    return out;
}

Matrix inverse(Matrix a) {
    size_t n = a.size();
    Matrix inv(n, std::vector<Cplx>(n, Cplx(0, 0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-250) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Cplx d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Cplx f = a[r][col];
            if (f == Cplx(0, 0)) continue;
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

double majorant_residual(const Matrix& a) {
    Matrix m = matmul(transpose(a, true), a);
    Matrix t = matmul(transpose(a, false), a);
    Matrix r = matmul(matmul(m, inverse(t)), m);
    double res = 0.0;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r.size(); ++j) res = std::max(res, std::abs(r[i][j] - t[i][j]));
    return res;
}

}  // namespace

std::pair<double, double> majorant_check_numeric(const std::vector<Int>& coeffs, double tol) {
    int n = static_cast<int>(coeffs.size());
    if (n < 2) throw std::domain_error("majorant_check_numeric: degree must be >= 2");
    EmbeddingMatrix em = embedding_matrix(coeffs);
    Matrix a = em.a;
    double res_full = majorant_residual(a);

    // perp lattice: columns n x^k - tr(x^k), k = 1..n-1
    std::vector<Cplx> power_sums(n, Cplx(0, 0));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) power_sums[k] += a[i][k];
    Matrix ap(n, std::vector<Cplx>(n - 1));
    for (int i = 0; i < n; ++i)
        for (int k = 1; k < n; ++k)
            ap[i][k - 1] = Cplx(static_cast<double>(n), 0) * a[i][k] - power_sums[k];
    double res_perp = majorant_residual(ap);

    if (!(res_full < tol) || !(res_perp < tol))
        throw std::domain_error("majorant_check_numeric: residual exceeds tolerance");
    return {res_full, res_perp};
}

}  // namespace cubeshape
