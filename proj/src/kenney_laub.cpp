#include "expmbt/kenney_laub.hpp"

#include <cmath>

#include "expmbt/oracle.hpp"

namespace expmbt {

const TauPade& tau_pade8() {
    static const TauPade tp = [] {
        oracle::TauPadeHp hp = oracle::tau_pade8_hp();
        TauPade t;
        for (std::size_t j = 0; j < 8; ++j) {
            t.alpha[j] = hp.alpha[j];
            t.beta[j] = hp.beta[j];
        }
        return t;
    }();
    return tp;
}

namespace {

Matrix plus_scaled_identity(const Matrix& m, Complex c) {
    Matrix r = m;
    for (Index i = 0; i < r.rows(); ++i) r.set(i, i, r.get(i, i) + c);
    return r;
}

} // namespace

Matrix sylvester_cascade(const Matrix& a, const Matrix& b, const Matrix& e,
                         const TauPade& tp, double* imag_residue) {
    if (!a.is_square() || !b.is_square() || e.rows() != a.rows() ||
        e.cols() != b.rows())
        throw DimensionError("cascade shapes must be n x n, d x d, n x d; got " +
                             shape_str(a) + ", " + shape_str(b) + ", " +
                             shape_str(e));
    const bool all_real = a.is_real() && b.is_real() && e.is_real();
    Matrix ac = a.to_complex();
    Matrix bc = b.to_complex();
    Matrix r = e.to_complex();
    for (std::size_t j = 0; j < 8; ++j) {
        const Complex ia = 1.0 / tp.alpha[j];
        const Complex ib = 1.0 / tp.beta[j];
        Matrix rhs = 2.0 * r + ia * (matmul(ac, r) - matmul(r, bc));
        // (I + A/beta) R + R (I - B/beta) = rhs
        Matrix lhs_a = plus_scaled_identity(ib * ac, 1.0);
        Matrix lhs_b = plus_scaled_identity((-ib) * bc, 1.0);
        r = sylvester_solve(lhs_a, lhs_b, rhs);
    }
    if (all_real) {
        if (imag_residue) *imag_residue = r.max_abs_imag();
        return r.real_part();
    }
    if (imag_residue) *imag_residue = 0.0;
    return r;
}

KLResult kl_frechet(const Matrix& a, const Matrix& b, const Matrix& e,
                    const KLOptions& opts) {
    if (!a.is_square() || !b.is_square() || e.rows() != a.rows() ||
        e.cols() != b.rows())
        throw DimensionError("block shapes must be n x n, d x d, n x d; got " +
                             shape_str(a) + ", " + shape_str(b) + ", " +
                             shape_str(e));
    if (!a.all_finite() || !b.all_finite() || !e.all_finite())
        throw Error("non-finite input");

    const bool all_real = a.is_real() && b.is_real() && e.is_real();
    KLResult res;
    if (e.empty()) {
        res.d = Matrix(e.rows(), e.cols(), e.kind());
        return res;
    }

    Matrix wa = a.to_complex();
    Matrix wb = b.to_complex();
    Matrix we = e.to_complex();
    SchurForm sa, sb;
    if (opts.initial_schur) {
        sa = schur_decompose(wa);
        sb = schur_decompose(wb);
        wa = sa.T;
        wb = sb.T;
        we = matmul(matmul(sa.Q.conj_transpose(), we), sb.Q);
    }

    const double eta = std::max(a.norm_fro(), b.norm_fro());
    int s = 0;
    while (std::ldexp(eta, -s) > 0.25) ++s;
    res.s = s;

    const double scale = std::ldexp(1.0, -s);
    Matrix d = sylvester_cascade(wa * scale, wb * scale, we, tau_pade8());
    d.promote();

    const ExpmOptions exp_opts; // Schur-aware: inputs here are triangular
    if (s == 0) {
        Matrix x = expm(wa, exp_opts);
        Matrix y = expm(wb, exp_opts);
        d = 0.5 * (matmul(x, d) + matmul(d, y));
        res.levels.push_back({0, x.norm_inf(), y.norm_inf()});
    } else {
        Matrix x = expm(wa * 0.5, exp_opts);
        Matrix y = expm(wb * 0.5, exp_opts);
        res.levels.push_back({1, x.norm_inf(), y.norm_inf()});
        for (int j = 1; j <= s; ++j) {
            d = matmul(x, d) + matmul(d, y);
            if (j < s) {
                const double f = std::ldexp(1.0, -(j + 1));
                x = expm(wa * f, exp_opts);
                y = expm(wb * f, exp_opts);
                res.levels.push_back({j + 1, x.norm_inf(), y.norm_inf()});
            }
        }
        d = matmul(x, d) + matmul(d, y);
        d *= std::ldexp(1.0, -(s + 1));
    }

    if (opts.initial_schur)
        d = matmul(matmul(sa.Q, d), sb.Q.conj_transpose());

    if (all_real) {
        res.imag_residue = d.max_abs_imag();
        d = d.real_part();
    }
    res.d = std::move(d);
    return res;
}

} // namespace expmbt
