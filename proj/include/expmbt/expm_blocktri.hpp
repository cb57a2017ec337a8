#pragma once

#include <array>
#include <utility>

#include "expmbt/densela.hpp"
#include "expmbt/matrix.hpp"
#include "expmbt/pade.hpp"

namespace expmbt {

/// Backward-error thresholds per Pade degree: the largest scaled norm for
/// which the relative backward error of the exponential (theta) and of the
/// off-diagonal block (ell) stay below the unit roundoff.
struct EllTable {
    static constexpr std::array<int, 5> degrees{3, 5, 7, 9, 13};
    std::array<double, 5> ell{};
    std::array<double, 5> theta{};
    double unit_roundoff = 0x1p-53;

    double ell_for(int m) const;
    double theta_for(int m) const;

    /// Constants derived once by derive_ell_theta and embedded here;
    /// a regeneration test keeps them honest.
    static const EllTable& builtin();
};

/// Recompute (ell_m, theta_m) from the scalar backward-error series in high
/// precision: the power series of log(e^{-z} r_m(z)) is formed, its
/// coefficients are replaced by their absolute values, and the largest z
/// keeping the bound at or below the unit roundoff is found by bisection.
std::pair<double, double> derive_ell_theta(int m, unsigned precision_digits = 150);

enum class SchurMode { Auto, Always, Never };

struct ExpmOptions {
    SchurMode schur = SchurMode::Auto;
    SideHint side = SideHint::Auto;
};

struct ExpmResult {
    Matrix x; // e^A
    Matrix y; // e^B
    Matrix d; // off-diagonal block
    int m = 0;
    int s = 0;
    bool used_schur = false;
    long matmuls = 0;
    bool overflowed = false; // squaring produced non-finite entries
};

/// Degree and scaling parameter from the norms of the diagonal blocks alone.
std::pair<int, int> select_params(double norm_a, double norm_b,
                                  const EllTable& table = EllTable::builtin());

/// Unscaled (quasi-)triangular inputs whose diagonal blocks replace the
/// corresponding blocks of the squared factors at each squaring step.
struct SquaringContext {
    const Matrix* tri_a = nullptr;
    const Matrix* tri_b = nullptr;
};

/// The squaring recurrence D <- XD + DY, X <- X^2, Y <- Y^2, with exact
/// diagonal-block replacement when a triangular context is present.
void squaring_phase(Matrix& x, Matrix& y, Matrix& d, int s,
                    const SquaringContext& ctx = {},
                    MatmulCounter* counter = nullptr);

/// Simultaneously computes e^A, e^B and the off-diagonal block of the
/// exponential of [[A,E],[0,B]] by scaling and squaring with diagonal Pade
/// approximants. Schur reduction kicks in when the scaling parameter
/// reaches 10 (unless forced on or off).
ExpmResult expm_block_tri(const Matrix& a, const Matrix& b, const Matrix& e,
                          const ExpmOptions& opts = {});

/// Plain matrix exponential through the same machinery (empty second block).
Matrix expm(const Matrix& a, const ExpmOptions& opts = {});

} // namespace expmbt
