// Copyright 2026 The qfac Authors
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

#ifndef QFAC_LINALG_H
#define QFAC_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfac {

using Complex = std::complex<double>;

/// Default tolerance for structural predicates (unitarity, projectors,
/// orthonormality).
inline constexpr double kStructTol = 1e-9;

/// Dense complex column vector.
class ComplexVector {
   public:
    explicit ComplexVector(std::size_t dim);
    explicit ComplexVector(std::vector<Complex> entries);
    ComplexVector(std::initializer_list<Complex> entries);

    std::size_t dim() const { return entries_.size(); }
    Complex &operator[](std::size_t i) { return entries_[i]; }
    const Complex &operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> entries() { return entries_; }

    static ComplexVector basis(std::size_t dim, std::size_t index);

    bool operator==(const ComplexVector &other) const = default;

   private:
    std::vector<Complex> entries_;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Row-wise literal, e.g. `ComplexMatrix{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    std::span<const Complex> entries() const { return entries_; }

    ComplexVector column(std::size_t c) const;

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

ComplexMatrix mat_mul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector mat_vec(const ComplexMatrix &a, const ComplexVector &v);
/// Row vector times matrix: (v^T a)^T.
ComplexVector vec_mat(const ComplexVector &v, const ComplexMatrix &a);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector kron(const ComplexVector &a, const ComplexVector &b);
ComplexMatrix dagger(const ComplexMatrix &a);
ComplexMatrix transpose(const ComplexMatrix &a);
ComplexMatrix conj(const ComplexMatrix &a);
ComplexVector conj(const ComplexVector &v);
ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex s, const ComplexMatrix &a);
ComplexVector operator*(Complex s, const ComplexVector &v);
Complex trace(const ComplexMatrix &a);

/// |u><v|
ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v);
/// <u|v>, conjugate-linear in the first argument.
Complex inner(const ComplexVector &u, const ComplexVector &v);
/// Plain bilinear product sum_i u_i v_i.
Complex dot(const ComplexVector &u, const ComplexVector &v);
double norm_sq(const ComplexVector &v);

/// Row-major flattening of a matrix into a vector of length rows*cols.
ComplexVector vectorize(const ComplexMatrix &a);

/// Largest entry modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs_diff(const ComplexVector &a, const ComplexVector &b);

bool all_finite(const ComplexMatrix &a);
bool all_finite(const ComplexVector &v);

/// max |a^dagger a - I| <= tol. Throws std::invalid_argument on non-square input.
bool is_unitary(const ComplexMatrix &a, double tol = kStructTol);

/// Hermitian idempotent within tol. Throws std::invalid_argument on non-square input.
bool is_projector(const ComplexMatrix &a, double tol = kStructTol);

/// Orthonormal basis of the range of a projector, via column-pivoted modified
/// Gram-Schmidt on its columns. Columns whose residual norm falls below tol
/// are discarded. Throws std::invalid_argument when p is not a projector.
std::vector<ComplexVector> range_basis(const ComplexMatrix &p, double tol = kStructTol);

}  // namespace qfac

#endif  // QFAC_LINALG_H
