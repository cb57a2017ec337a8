#pragma once

#include <vector>

#include "expmbt/densela.hpp"
#include "expmbt/expm_blocktri.hpp"
#include "expmbt/matrix.hpp"

namespace expmbt {

/// Roots of the [8/8] Pade approximant of tau(z) = tanh(z)/z in product form
/// r_8(z) = prod_j (1 - z/alpha_j) / (1 - z/beta_j).
struct TauPade {
    std::array<Complex, 8> alpha{};
    std::array<Complex, 8> beta{};
};

/// Derives the roots once in high precision and caches them as doubles.
const TauPade& tau_pade8();

/// R_8 from the cascade of eight Sylvester equations
///   (I + A/beta_j) R_j + R_j (I - B/beta_j)
///     = (I + A/alpha_j) R_{j-1} + R_{j-1} (I - B/alpha_j),  R_0 = E.
/// Always runs in complex arithmetic (the roots are complex); when every
/// input is real the imaginary part of R_8 is discarded and its magnitude
/// reported through imag_residue when provided.
Matrix sylvester_cascade(const Matrix& a, const Matrix& b, const Matrix& e,
                         const TauPade& tp, double* imag_residue = nullptr);

struct KLLevel {
    int level = 0;          // j, with X = exp(A / 2^j)
    double norm_x = 0.0;
    double norm_y = 0.0;
};

struct KLResult {
    Matrix d;
    int s = 0;
    double imag_residue = 0.0; // dropped imaginary magnitude for real inputs
    std::vector<KLLevel> levels;
};

struct KLOptions {
    bool initial_schur = true; // reduce A and B to complex triangular first
};

/// Kenney-Laub Schur-Frechet evaluation of the off-diagonal exponential
/// block: tau Pade cascade on the scaled inputs, then the top-down loop with
/// independently computed exponentials at every level.
KLResult kl_frechet(const Matrix& a, const Matrix& b, const Matrix& e,
                    const KLOptions& opts = {});

} // namespace expmbt
