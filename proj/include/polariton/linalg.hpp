// Copyright 2026 The polariton-qubits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>

namespace polariton {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when a numerical precondition is violated (non-Hermitian input,
/// non-PSD input, bad dimensions, non-finite values).
class LinalgError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major N x N complex matrix.
///
/// The public physics API only uses N = 2 (one qubit) and N = 4 (two
/// qubits). N = 16 appears internally as the Liouville-space dimension of a
/// two-qubit density operator.
template <std::size_t N>
class Matrix {
public:
  static constexpr std::size_t dim = N;

  Matrix() { data_.fill(Complex{}); }

  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    if (rows.size() != N) {
      throw LinalgError("Matrix: expected " + std::to_string(N) + " rows");
    }
    std::size_t i = 0;
    for (const auto &row : rows) {
      if (row.size() != N) {
        throw LinalgError("Matrix: expected " + std::to_string(N) +
                          " columns");
      }
      std::copy(row.begin(), row.end(), data_.begin() + i * N);
      ++i;
    }
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<Complex, N> &d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Complex &operator()(std::size_t i, std::size_t j) { return data_[i * N + j]; }
  const Complex &operator()(std::size_t i, std::size_t j) const {
    return data_[i * N + j];
  }

  std::span<Complex, N * N> entries() { return data_; }
  std::span<const Complex, N * N> entries() const { return data_; }

  Matrix &operator+=(const Matrix &o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix &operator*=(Complex s) {
    for (auto &x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, double s) { return a *= Complex{s}; }
  friend Matrix operator*(double s, Matrix a) { return a *= Complex{s}; }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    Matrix c;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::array<Complex, N * N> data_;
};

using ComplexMatrix2 = Matrix<2>;
using ComplexMatrix4 = Matrix<4>;

template <std::size_t N>
using Vector = std::array<Complex, N>;

template <std::size_t N>
Matrix<N> matmul(const Matrix<N> &a, const Matrix<N> &b) {
  return a * b;
}

template <std::size_t N>
Vector<N> operator*(const Matrix<N> &a, const Vector<N> &v) {
  Vector<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

template <std::size_t N>
Matrix<N> adjoint(const Matrix<N> &a) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(a(j, i));
  }
  return r;
}

template <std::size_t N>
Matrix<N> transpose(const Matrix<N> &a) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) r(i, j) = a(j, i);
  }
  return r;
}

template <std::size_t N>
Matrix<N> conjugate(const Matrix<N> &a) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(a(i, j));
  }
  return r;
}

/// Kronecker product, block convention result[M*i+k][M*j+l] = a[i][j]*b[k][l].
template <std::size_t N, std::size_t M>
Matrix<N * M> kron(const Matrix<N> &a, const Matrix<M> &b) {
  Matrix<N * M> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < M; ++k) {
        for (std::size_t l = 0; l < M; ++l) r(M * i + k, M * j + l) = aij * b(k, l);
      }
    }
  }
  return r;
}

template <std::size_t N>
Vector<N * N> kron(const Vector<N> &a, const Vector<N> &b) {
  Vector<N * N> r{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) r[N * i + k] = a[i] * b[k];
  }
  return r;
}

template <std::size_t N>
Complex trace(const Matrix<N> &a) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

template <std::size_t N>
double frobenius_norm(const Matrix<N> &a) {
  double s = 0.0;
  for (const auto &x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

template <std::size_t N>
double max_abs_diff(const Matrix<N> &a, const Matrix<N> &b) {
  double m = 0.0;
  for (std::size_t k = 0; k < N * N; ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

template <std::size_t N>
bool is_finite(const Matrix<N> &a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Complex &z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

template <std::size_t N>
Matrix<N> outer(const Vector<N> &a, const Vector<N> &b) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) r(i, j) = a[i] * std::conj(b[j]);
  }
  return r;
}

template <std::size_t N>
double norm(const Vector<N> &v) {
  double s = 0.0;
  for (const auto &x : v) s += std::norm(x);
  return std::sqrt(s);
}

template <std::size_t N>
Complex inner(const Vector<N> &a, const Vector<N> &b) {
  Complex s{};
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// ||A - A^dagger||_F <= tol * max(1, ||A||_F)
template <std::size_t N>
bool is_hermitian(const Matrix<N> &a, double tol) {
  if (!is_finite(a)) return false;
  return frobenius_norm(a - adjoint(a)) <= tol * std::max(1.0, frobenius_norm(a));
}

/// ||U U^dagger - 1||_F <= tol
template <std::size_t N>
bool is_unitary(const Matrix<N> &u, double tol) {
  if (!is_finite(u)) return false;
  return frobenius_norm(u * adjoint(u) - Matrix<N>::identity()) <= tol;
}

template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values;  // ascending
  Matrix<N> vectors;             // eigenvectors as columns
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Sweeps stop once the off-diagonal Frobenius norm drops below
/// 1e-14 * ||A||_F (at most 100 sweeps).
template <std::size_t N>
HermitianEigen<N> hermitian_eig(const Matrix<N> &a) {
  if (!is_hermitian(a, 1e-10)) {
    throw LinalgError("hermitian_eig: input is not Hermitian");
  }
  // Work on the exactly Hermitian part so the rotations stay consistent.
  Matrix<N> w = (a + adjoint(a)) * 0.5;
  Matrix<N> v = Matrix<N>::identity();
  const double scale = frobenius_norm(w);

  auto off_norm = [&w] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) {
        if (i != j) s += std::norm(w(i, j));
      }
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= 1e-14 * scale) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const Complex g = w(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        // Phase the (p,q) coupling real, then apply a real Givens rotation.
        const Complex phase = g / mag;
        const double theta = (w(q, q).real() - w(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p,q) plane.
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        // w <- w J
        for (std::size_t k = 0; k < N; ++k) {
          const Complex wkp = w(k, p);
          const Complex wkq = w(k, q);
          w(k, p) = wkp * jpp + wkq * jqp;
          w(k, q) = wkp * jpq + wkq * jqq;
        }
        // w <- J^dagger w
        for (std::size_t k = 0; k < N; ++k) {
          const Complex wpk = w(p, k);
          const Complex wqk = w(q, k);
          w(p, k) = std::conj(jpp) * wpk + std::conj(jqp) * wqk;
          w(q, k) = std::conj(jpq) * wpk + std::conj(jqq) * wqk;
        }
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        w(p, p) = w(p, p).real();
        w(q, q) = w(q, q).real();
        // v <- v J
        for (std::size_t k = 0; k < N; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&w](std::size_t x, std::size_t y) {
    return w(x, x).real() < w(y, y).real();
  });

  HermitianEigen<N> out;
  for (std::size_t c = 0; c < N; ++c) {
    out.values[c] = w(order[c], order[c]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

/// V diag(f(lambda)) V^dagger
template <std::size_t N, typename F>
Matrix<N> apply_spectral(const HermitianEigen<N> &eig, F &&f) {
  Matrix<N> r;
  for (std::size_t k = 0; k < N; ++k) {
    const Complex fk = f(eig.values[k]);
    for (std::size_t i = 0; i < N; ++i) {
      const Complex vik = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < N; ++j) r(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return r;
}

/// Square root of a Hermitian positive semidefinite matrix. Eigenvalues in
/// [-clamp_tol, 0) are treated as round-off and clamped to zero.
template <std::size_t N>
Matrix<N> sqrt_psd(const Matrix<N> &a, double clamp_tol = 1e-10) {
  const auto eig = hermitian_eig(a);
  if (eig.values.front() < -clamp_tol) {
    throw LinalgError("sqrt_psd: matrix is not positive semidefinite (eigenvalue " +
                      std::to_string(eig.values.front()) + ")");
  }
  return apply_spectral(eig, [](double l) { return Complex{std::sqrt(std::max(l, 0.0))}; });
}

/// exp(-i h t) for Hermitian h.
template <std::size_t N>
Matrix<N> expm_hermitian_scaled(const Matrix<N> &h, double t) {
  const auto eig = hermitian_eig(h);
  return apply_spectral(eig, [t](double l) { return std::exp(-kI * (l * t)); });
}

/// exp(a) for a general square matrix by scaling and squaring with a
/// truncated Taylor series. Used on small Liouville-space generators.
template <std::size_t N>
Matrix<N> expm(const Matrix<N> &a) {
  if (!is_finite(a)) throw LinalgError("expm: non-finite input");
  double norm1 = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < N; ++i) col += std::abs(a(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.25)));
  const Matrix<N> scaled = a * std::ldexp(1.0, -squarings);

  // ||scaled|| <= 1/4, so 20 terms put the truncation error near 1e-30.
  Matrix<N> result = Matrix<N>::identity();
  Matrix<N> term = Matrix<N>::identity();
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled;
    term *= Complex{1.0 / k};
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace polariton
