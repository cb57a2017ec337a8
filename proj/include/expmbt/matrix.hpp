#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "expmbt/errors.hpp"

namespace expmbt {

using Complex = std::complex<double>;
using Index = std::ptrdiff_t;

enum class ScalarKind { Real, Complex };

/// Dense matrix, column-major. Real matrices store plain doubles;
/// complex storage is allocated only when an imaginary part is present.
class Matrix {
public:
    Matrix() = default;
    Matrix(Index rows, Index cols, ScalarKind kind = ScalarKind::Real);

    static Matrix identity(Index n, ScalarKind kind = ScalarKind::Real);
    static Matrix zeros(Index rows, Index cols, ScalarKind kind = ScalarKind::Real);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);
    static Matrix from_rows(const std::vector<std::vector<Complex>>& rows);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    ScalarKind kind() const { return kind_; }
    bool is_real() const { return kind_ == ScalarKind::Real; }
    bool is_square() const { return rows_ == cols_; }

    // Typed element access. real_at/cplx_at require the matching kind.
    double& real_at(Index i, Index j);
    const double& real_at(Index i, Index j) const;
    Complex& cplx_at(Index i, Index j);
    const Complex& cplx_at(Index i, Index j) const;

    Complex get(Index i, Index j) const;
    void set(Index i, Index j, Complex v); // promotes storage if imag(v) != 0
    void set(Index i, Index j, double v);

    double* real_data();
    const double* real_data() const;
    Complex* cplx_data();
    const Complex* cplx_data() const;

    /// Copy with complex storage regardless of current kind.
    Matrix to_complex() const;
    /// In-place promotion to complex storage.
    void promote();
    Matrix real_part() const;
    Matrix imag_part() const;
    double max_abs_imag() const;
    /// Switch back to real storage if every imaginary part is exactly zero.
    void demote_if_real();

    Matrix transpose() const;
    Matrix conj_transpose() const;
    Matrix submatrix(Index i0, Index j0, Index r, Index c) const;
    void set_block(Index i0, Index j0, const Matrix& block);

    double norm_inf() const;  // max row sum
    double norm_one() const;  // max column sum
    double norm_fro() const;
    double max_abs() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);
    Matrix& operator*=(Complex s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) { return a *= -1.0; }

    /// Exact elementwise equality, including storage kind.
    bool bit_equal(const Matrix& other) const;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    ScalarKind kind_ = ScalarKind::Real;
    std::vector<double> re_;
    std::vector<Complex> cx_;

    void check_index(Index i, Index j) const;
};

/// "rows x cols" for error messages.
std::string shape_str(const Matrix& m);

void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

} // namespace expmbt
