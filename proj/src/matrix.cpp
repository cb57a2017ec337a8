#include "expmbt/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace expmbt {

Matrix::Matrix(Index rows, Index cols, ScalarKind kind)
    : rows_(rows), cols_(cols), kind_(kind) {
    if (rows < 0 || cols < 0)
        throw DimensionError("negative matrix dimension");
    if (kind_ == ScalarKind::Real)
        re_.assign(static_cast<std::size_t>(rows * cols), 0.0);
    else
        cx_.assign(static_cast<std::size_t>(rows * cols), Complex(0.0));
}

Matrix Matrix::identity(Index n, ScalarKind kind) {
    Matrix m(n, n, kind);
    for (Index i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

Matrix Matrix::zeros(Index rows, Index cols, ScalarKind kind) {
    return Matrix(rows, cols, kind);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    Index r = static_cast<Index>(rows.size());
    Index c = r > 0 ? static_cast<Index>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i) {
        if (static_cast<Index>(rows[i].size()) != c)
            throw DimensionError("ragged row initializer");
        for (Index j = 0; j < c; ++j) m.real_at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
    Index r = static_cast<Index>(rows.size());
    Index c = r > 0 ? static_cast<Index>(rows[0].size()) : 0;
    Matrix m(r, c, ScalarKind::Complex);
    for (Index i = 0; i < r; ++i) {
        if (static_cast<Index>(rows[i].size()) != c)
            throw DimensionError("ragged row initializer");
        for (Index j = 0; j < c; ++j) m.cplx_at(i, j) = rows[i][j];
    }
    m.demote_if_real();
    return m;
}

void Matrix::check_index(Index i, Index j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw DimensionError("matrix index out of range");
}

double& Matrix::real_at(Index i, Index j) {
    check_index(i, j);
    return re_[static_cast<std::size_t>(j * rows_ + i)];
}

const double& Matrix::real_at(Index i, Index j) const {
    check_index(i, j);
    return re_[static_cast<std::size_t>(j * rows_ + i)];
}

Complex& Matrix::cplx_at(Index i, Index j) {
    check_index(i, j);
    return cx_[static_cast<std::size_t>(j * rows_ + i)];
}

const Complex& Matrix::cplx_at(Index i, Index j) const {
    check_index(i, j);
    return cx_[static_cast<std::size_t>(j * rows_ + i)];
}

Complex Matrix::get(Index i, Index j) const {
    check_index(i, j);
    std::size_t k = static_cast<std::size_t>(j * rows_ + i);
    return is_real() ? Complex(re_[k]) : cx_[k];
}

void Matrix::set(Index i, Index j, Complex v) {
    check_index(i, j);
    if (is_real() && v.imag() != 0.0) promote();
    std::size_t k = static_cast<std::size_t>(j * rows_ + i);
    if (is_real())
        re_[k] = v.real();
    else
        cx_[k] = v;
}

void Matrix::set(Index i, Index j, double v) { set(i, j, Complex(v)); }

double* Matrix::real_data() { return re_.data(); }
const double* Matrix::real_data() const { return re_.data(); }
Complex* Matrix::cplx_data() { return cx_.data(); }
const Complex* Matrix::cplx_data() const { return cx_.data(); }

Matrix Matrix::to_complex() const {
    Matrix m = *this;
    m.promote();
    return m;
}

void Matrix::promote() {
    if (!is_real()) return;
    cx_.assign(re_.begin(), re_.end());
    re_.clear();
    re_.shrink_to_fit();
    kind_ = ScalarKind::Complex;
}

Matrix Matrix::real_part() const {
    if (is_real()) return *this;
    Matrix m(rows_, cols_);
    for (std::size_t k = 0; k < cx_.size(); ++k) m.re_[k] = cx_[k].real();
    return m;
}

Matrix Matrix::imag_part() const {
    Matrix m(rows_, cols_);
    if (!is_real())
        for (std::size_t k = 0; k < cx_.size(); ++k) m.re_[k] = cx_[k].imag();
    return m;
}

double Matrix::max_abs_imag() const {
    if (is_real()) return 0.0;
    double mx = 0.0;
    for (const Complex& z : cx_) mx = std::max(mx, std::abs(z.imag()));
    return mx;
}

void Matrix::demote_if_real() {
    if (is_real()) return;
    for (const Complex& z : cx_)
        if (z.imag() != 0.0) return;
    re_.resize(cx_.size());
    for (std::size_t k = 0; k < cx_.size(); ++k) re_[k] = cx_[k].real();
    cx_.clear();
    cx_.shrink_to_fit();
    kind_ = ScalarKind::Real;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_, kind_);
    for (Index j = 0; j < cols_; ++j)
        for (Index i = 0; i < rows_; ++i) {
            if (is_real())
                m.real_at(j, i) = real_at(i, j);
            else
                m.cplx_at(j, i) = cplx_at(i, j);
        }
    return m;
}

Matrix Matrix::conj_transpose() const {
    Matrix m = transpose();
    if (!m.is_real())
        for (Complex& z : m.cx_) z = std::conj(z);
    return m;
}

Matrix Matrix::submatrix(Index i0, Index j0, Index r, Index c) const {
    if (i0 < 0 || j0 < 0 || r < 0 || c < 0 || i0 + r > rows_ || j0 + c > cols_)
        throw DimensionError("submatrix out of range");
    Matrix m(r, c, kind_);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) {
            if (is_real())
                m.real_at(i, j) = real_at(i0 + i, j0 + j);
            else
                m.cplx_at(i, j) = cplx_at(i0 + i, j0 + j);
        }
    return m;
}

void Matrix::set_block(Index i0, Index j0, const Matrix& block) {
    if (i0 < 0 || j0 < 0 || i0 + block.rows() > rows_ || j0 + block.cols() > cols_)
        throw DimensionError("block out of range");
    for (Index j = 0; j < block.cols(); ++j)
        for (Index i = 0; i < block.rows(); ++i)
            set(i0 + i, j0 + j, block.get(i, j));
}

double Matrix::norm_inf() const {
    double mx = 0.0;
    for (Index i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (Index j = 0; j < cols_; ++j) s += std::abs(get(i, j));
        mx = std::max(mx, s);
    }
    return mx;
}

double Matrix::norm_one() const {
    double mx = 0.0;
    for (Index j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (Index i = 0; i < rows_; ++i) s += std::abs(get(i, j));
        mx = std::max(mx, s);
    }
    return mx;
}

double Matrix::norm_fro() const {
    double s = 0.0;
    if (is_real()) {
        for (double x : re_) s += x * x;
    } else {
        for (const Complex& z : cx_) s += std::norm(z);
    }
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double mx = 0.0;
    if (is_real()) {
        for (double x : re_) mx = std::max(mx, std::abs(x));
    } else {
        for (const Complex& z : cx_) mx = std::max(mx, std::abs(z));
    }
    return mx;
}

bool Matrix::all_finite() const {
    if (is_real()) {
        for (double x : re_)
            if (!std::isfinite(x)) return false;
    } else {
        for (const Complex& z : cx_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "add");
    if (is_real() && !rhs.is_real()) promote();
    if (is_real()) {
        for (std::size_t k = 0; k < re_.size(); ++k) re_[k] += rhs.re_[k];
    } else if (rhs.is_real()) {
        for (std::size_t k = 0; k < cx_.size(); ++k) cx_[k] += rhs.re_[k];
    } else {
        for (std::size_t k = 0; k < cx_.size(); ++k) cx_[k] += rhs.cx_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "subtract");
    if (is_real() && !rhs.is_real()) promote();
    if (is_real()) {
        for (std::size_t k = 0; k < re_.size(); ++k) re_[k] -= rhs.re_[k];
    } else if (rhs.is_real()) {
        for (std::size_t k = 0; k < cx_.size(); ++k) cx_[k] -= rhs.re_[k];
    } else {
        for (std::size_t k = 0; k < cx_.size(); ++k) cx_[k] -= rhs.cx_[k];
    }
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    if (is_real()) {
        for (double& x : re_) x *= s;
    } else {
        for (Complex& z : cx_) z *= s;
    }
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    if (s.imag() == 0.0) return *this *= s.real();
    promote();
    for (Complex& z : cx_) z *= s;
    return *this;
}

bool Matrix::bit_equal(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || kind_ != other.kind_)
        return false;
    return is_real() ? re_ == other.re_ : cx_ == other.cx_;
}

std::string shape_str(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string("cannot ") + what + " " + shape_str(a) +
                             " and " + shape_str(b));
}

} // namespace expmbt
