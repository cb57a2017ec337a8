#pragma once

#include <vector>

#include "expmbt/expm_blocktri.hpp"
#include "expmbt/matrix.hpp"

namespace expmbt {

/// Linear combination phi_0(A) w_0 + phi_1(A) w_1 + ... + phi_p(A) w_p.
struct PhiProblem {
    Matrix a;                            // n x n
    std::vector<std::vector<double>> w;  // p + 1 vectors of length n
};

/// Evaluates the combination with a single block exponential: the p >= 1 part
/// equals the off-diagonal operator applied to (A, J_p(0), [w_p ... w_1])
/// acting on the last basis vector, where J_p(0) is the nilpotent Jordan
/// block with ones on the superdiagonal.
std::vector<double> phi_combination(const PhiProblem& prob);

/// Exponential of the Hamiltonian block matrix [[T, H], [0, -T^t]]:
/// f = e^T, dh is the off-diagonal operator block, y = e^{-T^t}.
struct HamiltonianExp {
    Matrix f;
    Matrix dh;
    Matrix y;
};

/// H must be symmetric to within 10 units of roundoff relative to its norm.
HamiltonianExp hamiltonian_exp(const Matrix& t, const Matrix& h);

/// One growth step of a recursively nested block upper triangular family:
/// e_n couples everything accumulated so far to the new diagonal block g_nn.
struct NestedLevel {
    Matrix e_n;   // accumulated_dim x dim(g_nn)
    Matrix g_nn;  // square
};

/// Exponentials F_0..F_N of the telescoping family, one block exponential
/// per level; F_n = [[F_{n-1}, D_n], [0, e^{G_nn}]].
std::vector<Matrix> nested_sequence(const Matrix& g00,
                                    const std::vector<NestedLevel>& levels);

/// e^T for upper triangular T via the 2x2 block partition at the index k
/// minimizing max of the diagonal-block norms (smallest k on ties).
Matrix triangular_expm_partitioned(const Matrix& t);

} // namespace expmbt
