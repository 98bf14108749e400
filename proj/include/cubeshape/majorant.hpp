#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "cubeshape/int_types.hpp"

namespace cubeshape {

// All complex roots of a monic integer polynomial with no repeated roots,
// by simultaneous iteration (Durand-Kerner) with seeded perturbation
// restarts. coeffs = (c0, ..., c_{n-1}) for x^n + c_{n-1} x^{n-1} + ... + c0.
std::vector<std::complex<double>> polynomial_roots(const std::vector<Int>& coeffs,
                                                   double tol = 1e-10);

// Columns of A are the Minkowski images of a power basis; degree n, source
// polynomial monic of degree n.
struct EmbeddingMatrix {
    int degree;
    std::vector<std::vector<std::complex<double>>> a;  // n x n, a[row][col]
};

EmbeddingMatrix embedding_matrix(const std::vector<Int>& coeffs);

// residuals of M T^-1 M - T for the full rank-n lattice and for the
// trace-zero perp lattice spanned by n x^k - tr(x^k); both must be < tol
std::pair<double, double> majorant_check_numeric(const std::vector<Int>& coeffs, double tol);

}  // namespace cubeshape
