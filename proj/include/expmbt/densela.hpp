#pragma once

#include <vector>

#include "expmbt/matrix.hpp"

namespace expmbt {

/// Counts full matrix-matrix multiplications within one algorithm invocation.
struct MatmulCounter {
    long count = 0;
    void reset() { count = 0; }
};

/// Dense product A*B. Increments the counter by one when all three
/// dimensions are nonzero (a genuine matrix-matrix multiplication).
Matrix matmul(const Matrix& a, const Matrix& b, MatmulCounter* counter = nullptr);

enum class SolveSide { Left, Right };

/// Packed LU factorization with partial pivoting.
struct LUFactors {
    Matrix lu;             // unit-lower and upper factors packed together
    std::vector<int> piv;  // row permutation, piv[k] = pivot row at step k
};

/// Throws SingularError("singular Pade denominator") on an exactly zero pivot.
LUFactors lu_factor(const Matrix& m);

/// Solve M*S = RHS from a previous factorization of M.
Matrix lu_solve_factored(const LUFactors& f, const Matrix& rhs);

/// Left: solve M*S = RHS. Right: solve S*M = RHS (factorizes M^T).
Matrix lu_solve(const Matrix& m, const Matrix& rhs, SolveSide side);

/// Schur decomposition M = Q*T*Q^H. Real input gives a real quasi-triangular
/// T (2x2 bumps for complex conjugate eigenpairs); complex input gives a
/// triangular T.
struct SchurForm {
    Matrix Q;
    Matrix T;
    bool is_quasi = false;
};

SchurForm schur_decompose(const Matrix& m);

/// Eigenvalues read off a (quasi-)triangular matrix T.
std::vector<Complex> quasi_tri_eigenvalues(const Matrix& t);

/// True when all entries below the first subdiagonal are zero and no two
/// consecutive subdiagonal entries are nonzero.
bool is_quasi_upper_triangular(const Matrix& m);
bool is_upper_triangular(const Matrix& m);

/// Solve A*R + R*B = C by Schur reduction and block back-substitution.
/// Throws IllSeparatedError when the spectra of A and -B nearly touch.
Matrix sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c);

/// Exact exponential of a real 2x2 matrix (closed form).
Matrix exp2x2(const Matrix& m);

} // namespace expmbt
