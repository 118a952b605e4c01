// Copyright 2026 The spinq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Finite-dimensional state vectors and density matrices for one and two
 * spin-1/2 systems (dimension 2 or 4).
 *
 * Basis convention: index 0 is |+z>, index 1 is |-z>. Two-spin states use
 * row-major (A, B) ordering: 00, 01, 10, 11 = ++, +-, -+, --.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spinq/common.hpp"

namespace spinq {

inline bool is_supported_dim(std::size_t dim) { return dim == 2 || dim == 4; }

inline void require_supported_dim(std::size_t dim) {
    if (!is_supported_dim(dim)) {
        throw ValidationError("dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

/**
 * Normalized complex amplitude vector.
 *
 * Construction always goes through a validating factory, so every live
 * PureState satisfies sum |C_i|^2 = 1 within kNormTol.
 */
class PureState {
  public:
    /// Rescales `raw` to unit norm. Rejects the zero vector.
    static PureState normalize(std::span<const Complex> raw) {
        require_supported_dim(raw.size());
        double scale = 0.0;
        for (const auto &c : raw) {
            scale = std::max(scale, std::abs(c));
        }
        if (!(scale > kZeroAmp) || !std::isfinite(scale)) {
            throw ValidationError("cannot normalize a zero or non-finite amplitude vector");
        }
        // Scale first so the squared sum cannot overflow or underflow.
        double norm2 = 0.0;
        for (const auto &c : raw) {
            norm2 += std::norm(c / scale);
        }
        const double inv = 1.0 / (scale * std::sqrt(norm2));
        std::vector<Complex> amps(raw.begin(), raw.end());
        for (auto &c : amps) {
            c *= inv;
        }
        return PureState(std::move(amps));
    }

    /// Accepts `amps` as-is if already normalized within kNormTol.
    static PureState from_amplitudes(std::vector<Complex> amps) {
        require_supported_dim(amps.size());
        double norm2 = 0.0;
        for (const auto &c : amps) {
            norm2 += std::norm(c);
        }
        if (!(std::abs(norm2 - 1.0) <= kNormTol)) {
            throw ValidationError("amplitudes are not normalized (sum |C|^2 = " +
                                  std::to_string(norm2) + ")");
        }
        return PureState(std::move(amps));
    }

    static PureState basis(std::size_t dim, std::size_t index) {
        require_supported_dim(dim);
        if (index >= dim) {
            throw ValidationError("basis index out of range");
        }
        std::vector<Complex> amps(dim, Complex{0.0, 0.0});
        amps[index] = Complex{1.0, 0.0};
        return PureState(std::move(amps));
    }

    std::size_t dim() const { return amps_.size(); }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }
    std::span<const Complex> amps() const { return amps_; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &c : amps_) {
            s += std::norm(c);
        }
        return s;
    }

    /// Component-wise equality, no phase freedom.
    friend bool operator==(const PureState &, const PureState &) = default;

  private:
    explicit PureState(std::vector<Complex> amps) : amps_(std::move(amps)) {}

    std::vector<Complex> amps_;
};

inline void require_same_dim(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()));
    }
}

/// <phi|psi> = sum_i conj(phi_i) psi_i.
inline Complex inner_product(const PureState &phi, const PureState &psi) {
    require_same_dim(phi, psi);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < phi.dim(); ++i) {
        acc += std::conj(phi[i]) * psi[i];
    }
    return acc;
}

/// C_j = <j|psi> in the computational basis.
inline Complex expansion_coefficient(const PureState &psi, std::size_t basis_index) {
    if (basis_index >= psi.dim()) {
        throw ValidationError("basis index " + std::to_string(basis_index) +
                              " out of range for dimension " + std::to_string(psi.dim()));
    }
    return psi[basis_index];
}

/// True iff a = c b for some |c| = 1, i.e. |<a|b>| = 1 within `tol`.
inline bool same_ray(const PureState &a, const PureState &b, double tol = kNormTol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    return std::abs(std::abs(inner_product(a, b)) - 1.0) <= tol;
}

/// Component-wise comparison with absolute tolerance.
inline bool approx_equal(const PureState &a, const PureState &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) {
            return false;
        }
    }
    return true;
}

/// a (x) b with C_ij = a_i b_j, ordering 00, 01, 10, 11.
inline PureState tensor_product(const PureState &a, const PureState &b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw ValidationError("tensor_product expects two single-spin states");
    }
    std::array<Complex, 4> amps{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
    return PureState::normalize(amps);
}

namespace detail {

/**
 * Eigenvalues of a real symmetric N x N matrix by cyclic Jacobi rotations,
 * ascending. Accurate to a few ulps of the Frobenius norm, including at
 * repeated eigenvalues.
 */
template <std::size_t N>
std::array<double, N> symmetric_eigenvalues(std::array<std::array<double, N>, N> a) {
    double frob2 = 0.0;
    for (const auto &row : a) {
        for (double v : row) {
            frob2 += v * v;
        }
    }
    const double stop = frob2 * 1e-34;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                off += a[p][q] * a[p][q];
            }
        }
        if (off <= stop) {
            break;
        }
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, N> eig{};
    for (std::size_t i = 0; i < N; ++i) {
        eig[i] = a[i][i];
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace detail

/**
 * Row-major dim x dim matrix of complex entries, checked on construction to
 * be Hermitian, unit-trace and positive semidefinite.
 */
class DensityMatrix {
  public:
    static DensityMatrix from_entries(std::size_t dim, std::vector<Complex> entries);

    std::size_t dim() const { return dim_; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    std::span<const Complex> entries() const { return entries_; }

    friend bool operator==(const DensityMatrix &, const DensityMatrix &) = default;

  private:
    DensityMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {}

    friend DensityMatrix pure_to_density(const PureState &psi);
    friend DensityMatrix mix(std::span<const PureState> states, std::span<const double> weights);

    std::size_t dim_;
    std::vector<Complex> entries_;
};

/**
 * Eigenvalues of a Hermitian matrix (dim 2 or 4), ascending.
 *
 * dim 2 uses the roots of the characteristic quadratic. dim 4 runs Jacobi
 * on the real 8 x 8 embedding [[Re, -Im], [Im, Re]], whose spectrum is the
 * complex spectrum with every eigenvalue doubled.
 */
inline std::vector<double> hermitian_eigenvalues(std::size_t dim, std::span<const Complex> m) {
    require_supported_dim(dim);
    if (m.size() != dim * dim) {
        throw ValidationError("matrix entry count does not match dimension");
    }
    if (dim == 2) {
        const double a = m[0].real();
        const double d = m[3].real();
        const double mean = 0.5 * (a + d);
        const double radius = std::hypot(0.5 * (a - d), std::abs(m[1]));
        return {mean - radius, mean + radius};
    }
    constexpr std::size_t n = 4;
    std::array<std::array<double, 2 * n>, 2 * n> real{};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Symmetrize so roundoff in the Hermitian pair cannot bias the result.
            const Complex h = 0.5 * (m[i * n + j] + std::conj(m[j * n + i]));
            real[i][j] = h.real();
            real[i + n][j + n] = h.real();
            real[i][j + n] = -h.imag();
            real[i + n][j] = h.imag();
        }
    }
    const auto doubled = detail::symmetric_eigenvalues<2 * n>(real);
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    return eig;
}

/**
 * Coefficients c_0..c_dim of det(x I - M) = sum_k c_k x^k (c_dim = 1),
 * by the Faddeev-LeVerrier recursion. Real parts only; M must be Hermitian.
 */
inline std::vector<double> characteristic_polynomial(std::size_t dim, std::span<const Complex> m) {
    require_supported_dim(dim);
    if (m.size() != dim * dim) {
        throw ValidationError("matrix entry count does not match dimension");
    }
    std::vector<double> coeff(dim + 1, 0.0);
    coeff[dim] = 1.0;
    std::vector<Complex> prev(dim * dim, Complex{0.0, 0.0});
    std::vector<Complex> cur(dim * dim);
    for (std::size_t k = 1; k <= dim; ++k) {
        // cur = M * prev + c_{dim-k+1} I
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                Complex s{0.0, 0.0};
                for (std::size_t l = 0; l < dim; ++l) {
                    s += m[i * dim + l] * prev[l * dim + j];
                }
                if (i == j) {
                    s += coeff[dim - k + 1];
                }
                cur[i * dim + j] = s;
            }
        }
        Complex tr{0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t l = 0; l < dim; ++l) {
                tr += m[i * dim + l] * cur[l * dim + i];
            }
        }
        coeff[dim - k] = -tr.real() / static_cast<double>(k);
        prev.swap(cur);
    }
    return coeff;
}

inline std::vector<double> eigenvalues(const DensityMatrix &rho) {
    return hermitian_eigenvalues(rho.dim(), rho.entries());
}

inline Complex trace(const DensityMatrix &rho) {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        t += rho(i, i);
    }
    return t;
}

inline DensityMatrix DensityMatrix::from_entries(std::size_t dim, std::vector<Complex> entries) {
    require_supported_dim(dim);
    if (entries.size() != dim * dim) {
        throw ValidationError("density matrix needs dim*dim entries");
    }
    for (const auto &e : entries) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw ValidationError("density matrix has non-finite entries");
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            if (std::abs(entries[i * dim + j] - std::conj(entries[j * dim + i])) > kNormTol) {
                throw ValidationError("density matrix is not Hermitian");
            }
        }
    }
    Complex tr{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
        tr += entries[i * dim + i];
    }
    if (std::abs(tr - 1.0) > kNormTol) {
        throw ValidationError("density matrix trace is not 1");
    }
    const auto eig = hermitian_eigenvalues(dim, entries);
    if (eig.front() < -kPsdTol) {
        throw ValidationError("density matrix is not positive semidefinite (min eigenvalue " +
                              std::to_string(eig.front()) + ")");
    }
    return DensityMatrix(dim, std::move(entries));
}

/// |psi><psi|.
inline DensityMatrix pure_to_density(const PureState &psi) {
    const std::size_t n = psi.dim();
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            e[i * n + j] = psi[i] * std::conj(psi[j]);
        }
    }
    return DensityMatrix(n, std::move(e));
}

/// sum_k w_k |psi_k><psi_k|.
inline DensityMatrix mix(std::span<const PureState> states, std::span<const double> weights) {
    if (states.empty()) {
        throw ValidationError("mix needs at least one state");
    }
    if (states.size() != weights.size()) {
        throw ValidationError("mix needs one weight per state");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ValidationError("mix weights must be nonnegative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kNormTol) {
        throw ValidationError("mix weights must sum to 1");
    }
    const std::size_t n = states.front().dim();
    std::vector<Complex> e(n * n, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < states.size(); ++k) {
        require_same_dim(states[k], states.front());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                e[i * n + j] += weights[k] * states[k][i] * std::conj(states[k][j]);
            }
        }
    }
    return DensityMatrix(n, std::move(e));
}

/// tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
inline double purity(const DensityMatrix &rho) {
    double s = 0.0;
    for (const auto &e : rho.entries()) {
        s += std::norm(e);
    }
    return s;
}

/// <phi| rho |phi>.
inline double expectation_in(const DensityMatrix &rho, const PureState &phi) {
    if (rho.dim() != phi.dim()) {
        throw ValidationError("dimension mismatch between density matrix and state");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            acc += std::conj(phi[i]) * rho(i, j) * phi[j];
        }
    }
    return acc.real();
}

}  // namespace spinq
