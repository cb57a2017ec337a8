#pragma once

#include <vector>

#include "expmbt/densela.hpp"
#include "expmbt/matrix.hpp"

namespace expmbt {

/// Coefficients of the degree-m diagonal Pade numerator of exp,
/// generated in exact rational arithmetic and rounded once to double.
/// c[0] = 1 and c[k] = c[k-1]*(m-k+1)/((2m-k+1)*k).
struct PadeCoeffs {
    int m = 0;
    std::vector<double> c;
};

bool is_supported_degree(int m);

/// Throws on degrees outside {3, 5, 7, 9, 13}.
PadeCoeffs pade_coeffs(int m);

/// Even powers of the working matrix: P2 always, P4 for m >= 5,
/// P6 only for m = 13.
struct EvenPowers {
    Matrix p2, p4, p6;
};

EvenPowers even_powers(const Matrix& m_in, int m, MatmulCounter* counter = nullptr);

/// Odd/even split of the Pade numerator evaluated at a matrix:
/// U = u_m(M) = M * odd(M^2), V = v_m(M). The intermediates needed by the
/// operator scheme are kept: `odd` for m <= 9; w1, y1, w for m = 13.
struct UVParts {
    Matrix u, v;
    Matrix odd;        // m <= 9: sum of odd coefficients times even powers
    Matrix w1, y1, w;  // m == 13 factorization pieces
};

UVParts eval_uv(const Matrix& m_in, int m, const EvenPowers& powers,
                MatmulCounter* counter = nullptr);

/// The rectangular blocks M_l of the powers z^l applied to (A, B, E):
/// M2 = A E + E B, M4 = A^2 M2 + M2 B^2, M6 = A^4 M2 + M4 B^2,
/// M8 = A^4 M4 + M4 B^4 (M8 only enters the degree-9 scheme).
struct MSequence {
    Matrix m2, m4, m6, m8;
};

MSequence m_sequence(const Matrix& a, const Matrix& b, const Matrix& e, int m,
                     const EvenPowers& pa, const EvenPowers& pb,
                     MatmulCounter* counter = nullptr);

/// Convenience overload computing the needed even powers internally.
MSequence m_sequence(const Matrix& a, const Matrix& b, const Matrix& e,
                     bool need6);

/// Operator counterparts D_u, D_v of the odd/even split.
struct LParts {
    Matrix du, dv;
};

LParts eval_L_uv(const Matrix& a, const Matrix& b, const Matrix& e, int m,
                 const EvenPowers& pa, const UVParts& uv_b, const MSequence& ms,
                 MatmulCounter* counter = nullptr);

/// Everything the rational solves need, evaluated per the degree-m scheme.
struct SchemeOutput {
    Matrix ua, va; // n x n
    Matrix ub, vb; // d x d
    Matrix du, dv; // n x d
};

SchemeOutput eval_scheme(const Matrix& a, const Matrix& b, const Matrix& e,
                         int m, MatmulCounter* counter = nullptr);

enum class SideHint { Auto, Left, Right };

/// X = r_m(A), Y = r_m(B) and the off-diagonal block D of r_m applied to the
/// block matrix, via two LU factorizations and one extra solve. Auto picks
/// the left (row-dimension) system when n <= d, the right one otherwise.
struct RationalSolveResult {
    Matrix x, y, d;
};

RationalSolveResult rational_solve(const SchemeOutput& s,
                                   SideHint hint = SideHint::Auto,
                                   MatmulCounter* counter = nullptr);

} // namespace expmbt
