/*
   Copyright 2026 The rowpade authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ROWPADE_LINALG_HPP
#define ROWPADE_LINALG_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rowpade/scalar.hpp"

namespace rowpade {

using Vector = std::vector<Complex>;
using Matrix = std::vector<Vector>;  // row major

inline std::size_t rows(const Matrix& m) { return m.size(); }
inline std::size_t cols(const Matrix& m) { return m.empty() ? 0 : m[0].size(); }

inline Vector mat_vec(const Matrix& m, const Vector& x) {
    Vector y(rows(m), Complex(0));
    for (std::size_t i = 0; i < rows(m); ++i)
        for (std::size_t j = 0; j < cols(m); ++j) y[i] += m[i][j] * x[j];
    return y;
}

inline Real vec_norm(const Vector& v) {
    Real s = 0;
    for (const auto& c : v) s += norm_sq(c);
    using boost::multiprecision::sqrt;
    return sqrt(s);
}

inline Real frobenius_norm(const Matrix& m) {
    Real s = 0;
    for (const auto& row : m)
        for (const auto& c : row) s += norm_sq(c);
    using boost::multiprecision::sqrt;
    return sqrt(s);
}

/// M^H M (Hermitian, cols x cols).
inline Matrix gram(const Matrix& m) {
    std::size_t n = cols(m);
    Matrix g(n, Vector(n, Complex(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < rows(m); ++r) g[i][j] += conj(m[r][i]) * m[r][j];
    return g;
}

struct EigenDecomposition {
    std::vector<Real> values;  // ascending
    Matrix vectors;            // vectors[k] is the eigenvector for values[k]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Adequate and fully
/// deterministic for the small systems this library produces (n <= ~12).
inline EigenDecomposition hermitian_eigen(Matrix a, const PrecisionContext& ctx) {
    using boost::multiprecision::sqrt;
    std::size_t n = rows(a);
    if (n == 0 || cols(a) != n) throw std::invalid_argument("hermitian_eigen: square matrix required");
    Matrix v(n, Vector(n, Complex(0)));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = Complex(1);

    Real scale = frobenius_norm(a);
    if (scale == 0) scale = 1;
    Real stop = scale * ctx.eps();

    for (unsigned sweep = 0; sweep < 200; ++sweep) {
        Real off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += norm_sq(a[p][q]);
        off = sqrt(off);
        if (off <= stop) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Real apq = abs(a[p][q]);
                if (apq <= stop / Real(static_cast<unsigned>(n * n))) continue;
                // phase so that conj(phase)*a[p][q] is real positive
                Complex phase = a[p][q] / Complex(apq);
                Real app = a[p][p].re, aqq = a[q][q].re;
                Real tau = (aqq - app) / (2 * apq);
                Real t;
                if (tau >= 0)
                    t = 1 / (tau + sqrt(1 + tau * tau));
                else
                    t = -1 / (-tau + sqrt(1 + tau * tau));
                Real c = 1 / sqrt(1 + t * t);
                Real s = t * c;
                // columns/rows rotate by J with J[p][p]=c, J[p][q]=s*phase,
                // J[q][p]=-s*conj(phase), J[q][q]=c  (J unitary)
                Complex jpq = Complex(s) * phase;
                Complex jqp = -Complex(s) * conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    Complex akp = a[k][p], akq = a[k][q];
                    a[k][p] = akp * Complex(c) + akq * jqp;
                    a[k][q] = akp * jpq + akq * Complex(c);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Complex apk = a[p][k], aqk = a[q][k];
                    a[p][k] = conj(Complex(c)) * apk + conj(jqp) * aqk;
                    a[q][k] = conj(jpq) * apk + conj(Complex(c)) * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Complex vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = vkp * Complex(c) + vkq * jqp;
                    v[k][q] = vkp * jpq + vkq * Complex(c);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Real> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a[i][i].re;
    std::sort(order.begin(), order.end(), [&diag](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.assign(n, Vector(n));
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i][order[k]];
    }
    return out;
}

/// Fix the free phase of a vector deterministically: the entry of largest
/// modulus is made real and positive.
inline Vector phase_normalized(Vector v) {
    std::size_t best = 0;
    Real bm = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Real m = norm_sq(v[i]);
        if (m > bm) { bm = m; best = i; }
    }
    if (bm == 0) return v;
    Complex phase = v[best] / Complex(abs(v[best]));
    for (auto& c : v) c /= phase;
    return v;
}

struct NullSpaceResult {
    Vector vector;            // unit-norm, smallest singular direction
    unsigned null_dimension;  // singular values below zero_tolerance * sigma_max
    Real sigma_max;
};

/// Smallest singular direction of M and the numerical null-space dimension,
/// obtained from the eigendecomposition of the Gram matrix M^H M.
/// Deterministic for fixed input and precision.
inline NullSpaceResult null_space_vector(const Matrix& m, const PrecisionContext& ctx) {
    using boost::multiprecision::sqrt;
    if (m.empty() || cols(m) == 0) throw std::invalid_argument("null_space_vector: empty matrix");
    auto eig = hermitian_eigen(gram(m), ctx);
    std::size_t n = eig.values.size();
    Real smax = sqrt((std::max)(Real(0), eig.values[n - 1]));
    Real cut = smax * ctx.zero_tolerance();
    unsigned dim = 0;
    for (auto lambda : eig.values) {
        Real sv = sqrt((std::max)(Real(0), lambda));
        if (sv <= cut) ++dim;
    }
    if (rows(m) < cols(m)) dim = (std::max)(dim, static_cast<unsigned>(cols(m) - rows(m)));
    return {phase_normalized(eig.vectors[0]), dim, smax};
}

/// Orthonormal basis of the numerical null space.
inline std::vector<Vector> null_space_basis(const Matrix& m, const PrecisionContext& ctx) {
    auto r = null_space_vector(m, ctx);
    auto eig = hermitian_eigen(gram(m), ctx);
    std::vector<Vector> basis;
    for (std::size_t k = 0; k < r.null_dimension && k < eig.values.size(); ++k)
        basis.push_back(phase_normalized(eig.vectors[k]));
    return basis;
}

struct LinearSolveResult {
    bool feasible = false;
    Vector particular;            // least-squares solution, empty when infeasible
    std::vector<Vector> nullspace;  // homogeneous directions
};

/// Solve A x = b in the least-squares sense via the Gram eigendecomposition
/// and report whether the residual is at tolerance (the system is then
/// treated as exactly solvable; inputs here are structurally exact).
inline LinearSolveResult solve_affine(const Matrix& a, const Vector& b, const PrecisionContext& ctx) {
    using boost::multiprecision::sqrt;
    if (a.empty() || cols(a) == 0) throw std::invalid_argument("solve_affine: empty matrix");
    std::size_t n = cols(a);
    auto eig = hermitian_eigen(gram(a), ctx);
    Real smax_sq = (std::max)(Real(0), eig.values[n - 1]);
    Real cut_sq = smax_sq * ctx.zero_tolerance() * ctx.zero_tolerance();

    // A^H b
    Vector ahb(n, Complex(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < rows(a); ++i) ahb[j] += conj(a[i][j]) * b[i];

    LinearSolveResult out;
    Vector x(n, Complex(0));
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.values[k] <= cut_sq) {
            out.nullspace.push_back(phase_normalized(eig.vectors[k]));
            continue;
        }
        Complex proj(0);
        for (std::size_t j = 0; j < n; ++j) proj += conj(eig.vectors[k][j]) * ahb[j];
        proj /= Complex(eig.values[k]);
        for (std::size_t j = 0; j < n; ++j) x[j] += proj * eig.vectors[k][j];
    }

    Vector res = mat_vec(a, x);
    for (std::size_t i = 0; i < rows(a); ++i) res[i] -= b[i];
    Real scale = frobenius_norm(a) * (1 + vec_norm(x)) + vec_norm(b);
    if (scale == 0) scale = 1;
    out.feasible = vec_norm(res) <= scale * ctx.zero_tolerance();
    if (out.feasible) out.particular = std::move(x);
    return out;
}

}  // namespace rowpade

#endif
