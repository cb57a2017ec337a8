#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <vector>

#include "expmbt/matrix.hpp"

namespace expmbt::oracle {

using BigFloat = boost::multiprecision::mpfr_float;
using Rational = boost::multiprecision::cpp_rational;

/// Sets the default mpfr working precision for the current scope.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits)
        : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(digits);
    }
    ~PrecisionGuard() { BigFloat::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

/// Dense real matrix with arbitrary-precision entries. All entries share the
/// precision context active at construction time.
class BigMatrix {
public:
    BigMatrix() = default;
    BigMatrix(Index rows, Index cols);

    static BigMatrix identity(Index n);
    static BigMatrix from(const Matrix& m); // real matrices only

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    BigFloat& at(Index i, Index j) { return a_[static_cast<std::size_t>(j * rows_ + i)]; }
    const BigFloat& at(Index i, Index j) const { return a_[static_cast<std::size_t>(j * rows_ + i)]; }

    BigMatrix submatrix(Index i0, Index j0, Index r, Index c) const;
    void set_block(Index i0, Index j0, const BigMatrix& block);

    BigFloat norm_inf() const;
    Matrix to_double() const;

    BigMatrix& operator+=(const BigMatrix& rhs);
    BigMatrix& operator-=(const BigMatrix& rhs);
    BigMatrix& operator*=(const BigFloat& s);
    friend BigMatrix operator+(BigMatrix x, const BigMatrix& y) { return x += y; }
    friend BigMatrix operator-(BigMatrix x, const BigMatrix& y) { return x -= y; }

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<BigFloat> a_;
};

BigMatrix big_matmul(const BigMatrix& a, const BigMatrix& b);

/// Reference exponential: scale until the inf-norm is at most 1/8, sum the
/// Taylor series to the working precision, then square back.
BigMatrix expm_ref(const BigMatrix& m, unsigned digits = 100);
BigMatrix expm_ref(const Matrix& m, unsigned digits = 100);

/// Off-diagonal block of exp([[A,E],[0,B]]) via the block embedding.
BigMatrix Lexp_ref(const Matrix& a, const Matrix& b, const Matrix& e,
                   unsigned digits = 100);

/// phi_j via its defining power series sum_k z^k/(k+j)!.
BigMatrix phi_ref(const BigMatrix& a, int j, unsigned digits = 100);

/// Eigenvalues via the exact characteristic polynomial (Faddeev-LeVerrier in
/// high precision) and a Durand-Kerner root iteration.
std::vector<Complex> eigenvalues_ref(const Matrix& m, unsigned digits = 100);

/// Roots of a polynomial with high-precision coefficients c[0] + c[1] x + ...
std::vector<Complex> poly_roots(const std::vector<BigFloat>& coeffs,
                                unsigned digits);

/// Relative inf-norm error of a double-precision result against a reference,
/// evaluated in the reference precision.
double rel_error_inf(const Matrix& approx, const BigMatrix& ref);

/// Diagonal Pade coefficients of exp as exact rationals, obtained by solving
/// the order-matching linear system directly (independent of the closed-form
/// recurrence used by the double-precision tables).
std::vector<Rational> pade_exp_coeffs_exact(int m);

/// Numerator/denominator coefficients (in x = z^2, constant term 1) of the
/// [8/8] approximant to tanh(z)/z, plus the 8 numerator and denominator roots
/// in z.
struct TauPadeHp {
    std::vector<BigFloat> num; // degree 4 in x
    std::vector<BigFloat> den; // degree 4 in x
    std::vector<Complex> alpha; // 8 numerator roots in z
    std::vector<Complex> beta;  // 8 denominator roots in z
};
TauPadeHp tau_pade8_hp(unsigned digits = 80);

/// |tanh(iz)/(iz) - r8(iz)| evaluated in high precision (a real quantity).
BigFloat tau_pade8_error_at_iz(double z, unsigned digits = 80);

// Truncated power series over BigFloat, used by the backward-error threshold
// derivation. c[k] is the coefficient of z^k.
using Series = std::vector<BigFloat>;
Series series_mul(const Series& a, const Series& b, std::size_t order);
Series series_inverse(const Series& a, std::size_t order);
Series series_log1p(const Series& w, std::size_t order); // requires w[0] == 0

} // namespace expmbt::oracle
