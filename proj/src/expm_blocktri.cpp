#include "expmbt/expm_blocktri.hpp"

#include <cmath>

namespace expmbt {

namespace {

// Replace the diagonal blocks of x with the exact exponential of
// factor * (matching diagonal block of tri), walking the 2x2 bumps of a real
// quasi-triangular pattern.
void replace_diag_blocks(Matrix& x, const Matrix& tri, double factor) {
    const Index n = tri.rows();
    Index i = 0;
    while (i < n) {
        if (tri.is_real() && i + 1 < n && tri.real_at(i + 1, i) != 0.0) {
            Matrix block = tri.submatrix(i, i, 2, 2);
            x.set_block(i, i, exp2x2(block * factor));
            i += 2;
        } else {
            x.set(i, i, std::exp(tri.get(i, i) * factor));
            i += 1;
        }
    }
}

} // namespace

std::pair<int, int> select_params(double norm_a, double norm_b,
                                  const EllTable& table) {
    if (!std::isfinite(norm_a) || !std::isfinite(norm_b))
        throw Error("non-finite input");
    const double eta = std::max(norm_a, norm_b);
    for (int m : {3, 5, 7, 9})
        if (eta <= table.ell_for(m)) return {m, 0};
    const double l13 = table.ell_for(13);
    int s = 0;
    if (eta > l13) {
        s = static_cast<int>(std::ceil(std::log2(eta / l13)));
        if (s < 0) s = 0;
        while (std::ldexp(eta, -s) > l13) ++s;
    }
    return {13, s};
}

void squaring_phase(Matrix& x, Matrix& y, Matrix& d, int s,
                    const SquaringContext& ctx, MatmulCounter* counter) {
    for (int k = 1; k <= s; ++k) {
        d = matmul(x, d, counter) + matmul(d, y, counter);
        const double factor = std::ldexp(1.0, k - s);
        x = matmul(x, x, counter);
        if (ctx.tri_a) replace_diag_blocks(x, *ctx.tri_a, factor);
        y = matmul(y, y, counter);
        if (ctx.tri_b) replace_diag_blocks(y, *ctx.tri_b, factor);
    }
}

ExpmResult expm_block_tri(const Matrix& a, const Matrix& b, const Matrix& e,
                          const ExpmOptions& opts) {
    if (!a.is_square() || !b.is_square() || e.rows() != a.rows() ||
        e.cols() != b.rows())
        throw DimensionError("block shapes must be n x n, d x d, n x d; got " +
                             shape_str(a) + ", " + shape_str(b) + ", " +
                             shape_str(e));
    if (!a.all_finite() || !b.all_finite() || !e.all_finite())
        throw Error("non-finite input");

    MatmulCounter counter;
    ExpmResult res;
    auto [m, s] = select_params(a.norm_inf(), b.norm_inf());
    res.m = m;
    res.s = s;
    res.used_schur =
        opts.schur == SchurMode::Always ||
        (opts.schur == SchurMode::Auto && s >= 10);

    Matrix wa = a, wb = b, we = e;
    SchurForm sa, sb;
    if (res.used_schur) {
        sa = schur_decompose(wa);
        sb = schur_decompose(wb);
        wa = sa.T;
        wb = sb.T;
        if (!we.empty())
            we = matmul(matmul(sa.Q.conj_transpose(), we, &counter), sb.Q, &counter);
    }

    const bool tri_a = is_quasi_upper_triangular(wa) && wa.rows() > 0;
    const bool tri_b = is_quasi_upper_triangular(wb) && wb.rows() > 0;

    const double scale = std::ldexp(1.0, -s);
    SchemeOutput scheme =
        eval_scheme(wa * scale, wb * scale, we * scale, m, &counter);
    RationalSolveResult rs = rational_solve(scheme, opts.side, &counter);

    SquaringContext ctx;
    if (tri_a) ctx.tri_a = &wa;
    if (tri_b) ctx.tri_b = &wb;
    squaring_phase(rs.x, rs.y, rs.d, s, ctx, &counter);

    if (res.used_schur) {
        rs.x = matmul(matmul(sa.Q, rs.x, &counter), sa.Q.conj_transpose(), &counter);
        rs.y = matmul(matmul(sb.Q, rs.y, &counter), sb.Q.conj_transpose(), &counter);
        if (!rs.d.empty())
            rs.d = matmul(matmul(sa.Q, rs.d, &counter), sb.Q.conj_transpose(), &counter);
    }

    res.overflowed = !(rs.x.all_finite() && rs.y.all_finite() && rs.d.all_finite());
    res.x = std::move(rs.x);
    res.y = std::move(rs.y);
    res.d = std::move(rs.d);
    res.matmuls = counter.count;
    return res;
}

Matrix expm(const Matrix& a, const ExpmOptions& opts) {
    Matrix b(0, 0, a.kind());
    Matrix e(a.rows(), 0, a.kind());
    return expm_block_tri(a, b, e, opts).x;
}

} // namespace expmbt
