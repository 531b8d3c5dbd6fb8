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

#include "qfac/linalg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qfac {

namespace {

void require_positive(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

void require_square(const ComplexMatrix &a, const char *op) {
    if (!a.is_square()) {
        throw std::invalid_argument(std::string(op) + ": matrix is not square");
    }
}

}  // namespace

ComplexVector::ComplexVector(std::size_t dim) : entries_(dim) {
    if (dim == 0) {
        throw std::invalid_argument("vector dimension must be positive");
    }
}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw std::invalid_argument("vector dimension must be positive");
    }
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    ComplexVector v(dim);
    v[index] = 1;
    return v;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    require_positive(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require_positive(rows, cols);
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("matrix entry count does not match shape");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    require_positive(rows_, cols_);
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ragged matrix literal");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); i++) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
    ComplexVector v(rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        v[r] = (*this)(r, c);
    }
    return v;
}

ComplexMatrix mat_mul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mat_mul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); j++) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexVector mat_vec(const ComplexMatrix &a, const ComplexVector &v) {
    if (a.cols() != v.dim()) {
        throw std::invalid_argument("mat_vec: dimension mismatch");
    }
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); i++) {
        Complex acc = 0;
        for (std::size_t k = 0; k < a.cols(); k++) {
            acc += a(i, k) * v[k];
        }
        out[i] = acc;
    }
    return out;
}

ComplexVector vec_mat(const ComplexVector &v, const ComplexMatrix &a) {
    if (a.rows() != v.dim()) {
        throw std::invalid_argument("vec_mat: dimension mismatch");
    }
    ComplexVector out(a.cols());
    for (std::size_t k = 0; k < a.rows(); k++) {
        const Complex vk = v[k];
        if (vk == Complex{}) {
            continue;
        }
        for (std::size_t j = 0; j < a.cols(); j++) {
            out[j] += vk * a(k, j);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t j = 0; j < b.dim(); j++) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

ComplexMatrix transpose(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            out(c, r) = a(r, c);
        }
    }
    return out;
}

ComplexMatrix conj(const ComplexMatrix &a) {
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (auto &z : e) {
        z = std::conj(z);
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexVector conj(const ComplexVector &v) {
    ComplexVector out(v.dim());
    for (std::size_t i = 0; i < v.dim(); i++) {
        out[i] = std::conj(v[i]);
    }
    return out;
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "add");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); i++) {
        e[i] += b.entries()[i];
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "subtract");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); i++) {
        e[i] -= b.entries()[i];
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix &a) {
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (auto &z : e) {
        z *= s;
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexVector operator*(Complex s, const ComplexVector &v) {
    ComplexVector out(v.dim());
    for (std::size_t i = 0; i < v.dim(); i++) {
        out[i] = s * v[i];
    }
    return out;
}

Complex trace(const ComplexMatrix &a) {
    require_square(a, "trace");
    Complex t = 0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        t += a(i, i);
    }
    return t;
}

ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v) {
    ComplexMatrix out(u.dim(), v.dim());
    for (std::size_t i = 0; i < u.dim(); i++) {
        for (std::size_t j = 0; j < v.dim(); j++) {
            out(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return out;
}

Complex inner(const ComplexVector &u, const ComplexVector &v) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    Complex acc = 0;
    for (std::size_t i = 0; i < u.dim(); i++) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

Complex dot(const ComplexVector &u, const ComplexVector &v) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("dot: dimension mismatch");
    }
    Complex acc = 0;
    for (std::size_t i = 0; i < u.dim(); i++) {
        acc += u[i] * v[i];
    }
    return acc;
}

double norm_sq(const ComplexVector &v) {
    double acc = 0;
    for (const auto &z : v.entries()) {
        acc += std::norm(z);
    }
    return acc;
}

ComplexVector vectorize(const ComplexMatrix &a) {
    return ComplexVector(std::vector<Complex>(a.entries().begin(), a.entries().end()));
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0;
    for (std::size_t i = 0; i < a.entries().size(); i++) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

double max_abs_diff(const ComplexVector &a, const ComplexVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double m = 0;
    for (std::size_t i = 0; i < a.dim(); i++) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

bool all_finite(const ComplexMatrix &a) {
    return std::all_of(a.entries().begin(), a.entries().end(),
                       [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool all_finite(const ComplexVector &v) {
    return std::all_of(v.entries().begin(), v.entries().end(),
                       [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool is_unitary(const ComplexMatrix &a, double tol) {
    require_square(a, "is_unitary");
    if (!all_finite(a)) {
        return false;
    }
    return max_abs_diff(mat_mul(dagger(a), a), ComplexMatrix::identity(a.rows())) <= tol;
}

bool is_projector(const ComplexMatrix &a, double tol) {
    require_square(a, "is_projector");
    if (!all_finite(a)) {
        return false;
    }
    return max_abs_diff(mat_mul(a, a), a) <= tol && max_abs_diff(dagger(a), a) <= tol;
}

std::vector<ComplexVector> range_basis(const ComplexMatrix &p, double tol) {
    if (!is_projector(p, tol)) {
        throw std::invalid_argument("range_basis: input is not a projector");
    }
    const std::size_t n = p.rows();
    std::vector<ComplexVector> residuals;
    residuals.reserve(n);
    for (std::size_t c = 0; c < n; c++) {
        residuals.push_back(p.column(c));
    }
    std::vector<bool> used(n, false);
    std::vector<ComplexVector> basis;
    while (basis.size() < n) {
        // Pivot on the column with the largest remaining residual.
        std::size_t best = n;
        double best_norm = tol;
        for (std::size_t c = 0; c < n; c++) {
            if (used[c]) {
                continue;
            }
            double nrm = std::sqrt(norm_sq(residuals[c]));
            if (nrm > best_norm) {
                best_norm = nrm;
                best = c;
            }
        }
        if (best == n) {
            break;
        }
        used[best] = true;
        ComplexVector q = Complex(1.0 / best_norm) * residuals[best];
        for (std::size_t c = 0; c < n; c++) {
            if (used[c]) {
                continue;
            }
            Complex proj = inner(q, residuals[c]);
            for (std::size_t i = 0; i < n; i++) {
                residuals[c][i] -= proj * q[i];
            }
        }
        basis.push_back(std::move(q));
    }
    return basis;
}

}  // namespace qfac
