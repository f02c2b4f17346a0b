#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "vcausal/errors.hpp"

namespace vcausal {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Small dimensions only (2x2 up to 16x16 here),
/// so no attempt at blocking or expression templates.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        ComplexMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
        return r;
    }
    ComplexMatrix operator-(const ComplexMatrix& o) const {
        ComplexMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
        return r;
    }
    ComplexMatrix operator*(const ComplexMatrix& o) const {
        ComplexMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                Complex aik = (*this)(i, k);
                if (aik == Complex(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
        ComplexMatrix r = m;
        for (auto& v : r.data_) v *= s;
        return r;
    }
    ComplexMatrix operator-() const { return Complex(-1.0) * (*this); }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    /// Entrywise max modulus.
    double norm_inf() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_hermitian(double tol = 1e-12) const {
        return rows_ == cols_ && ((*this) - adjoint()).norm_inf() <= tol;
    }

private:
    int rows_, cols_;
    std::vector<Complex> data_;
};

/// Kronecker product; dimensions multiply.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            Complex aij = a(i, j);
            if (aij == Complex(0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

inline ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m(0, 0) = s;
    m(0, 1) = s;
    m(1, 0) = s;
    m(1, 1) = -s;
    return m;
}

/// Pure state on a register of qubits. Basis index bit 0 (most significant)
/// is party 0, so |0000> has index 0 and party A owns the leading bit.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(int dimension) : amps_(dimension) {}
    explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {}

    /// Basis state |index> of the given dimension.
    static StateVector basis(int dimension, int index) {
        StateVector s(dimension);
        s.amps_[index] = 1.0;
        return s;
    }

    int dimension() const { return static_cast<int>(amps_.size()); }
    Complex& operator[](int i) { return amps_[i]; }
    const Complex& operator[](int i) const { return amps_[i]; }

    double squared_norm() const {
        double n = 0.0;
        for (const auto& a : amps_) n += std::norm(a);
        return n;
    }

    void normalize() {
        const double n = std::sqrt(squared_norm());
        for (auto& a : amps_) a /= n;
    }

    /// <this|other>
    Complex inner(const StateVector& other) const {
        Complex acc(0.0);
        for (std::size_t k = 0; k < amps_.size(); ++k) acc += std::conj(amps_[k]) * other.amps_[k];
        return acc;
    }

private:
    std::vector<Complex> amps_;
};

inline StateVector operator*(const ComplexMatrix& m, const StateVector& s) {
    StateVector r(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        Complex acc(0.0);
        for (int j = 0; j < m.cols(); ++j) acc += m(i, j) * s[j];
        r[i] = acc;
    }
    return r;
}

/// Applies a 2x2 matrix to one qubit of an n-qubit state, leaving the rest alone.
/// Qubit 0 is the most significant bit of the basis index.
inline StateVector apply_one_qubit(const StateVector& s, int n_qubits, int qubit, const ComplexMatrix& m) {
    StateVector r(s.dimension());
    const int shift = n_qubits - 1 - qubit;
    const int bit = 1 << shift;
    for (int idx = 0; idx < s.dimension(); ++idx) {
        const int row = (idx & bit) ? 1 : 0;
        const int base = idx & ~bit;
        r[idx] = m(row, 0) * s[base] + m(row, 1) * s[base | bit];
    }
    return r;
}

} // namespace vcausal
