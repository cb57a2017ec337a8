#include "expmbt/kernels.hpp"

#include <cmath>

namespace expmbt {

std::vector<double> phi_combination(const PhiProblem& prob) {
    const Index n = prob.a.rows();
    if (!prob.a.is_square()) throw DimensionError("A must be square");
    if (prob.w.empty()) throw DimensionError("need at least w_0");
    for (const auto& wj : prob.w)
        if (static_cast<Index>(wj.size()) != n)
            throw DimensionError("every w_j must have length " +
                                 std::to_string(n));
    const Index p = static_cast<Index>(prob.w.size()) - 1;

    auto apply = [n](const Matrix& m, const std::vector<double>& v) {
        std::vector<double> out(static_cast<std::size_t>(m.rows()), 0.0);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < m.rows(); ++i)
                out[static_cast<std::size_t>(i)] +=
                    m.real_at(i, j) * v[static_cast<std::size_t>(j)];
        return out;
    };

    if (p == 0) return apply(expm(prob.a), prob.w[0]);

    Matrix jp(p, p);
    for (Index i = 0; i + 1 < p; ++i) jp.real_at(i, i + 1) = 1.0;
    Matrix w(n, p);
    for (Index j = 0; j < p; ++j) {  // column j holds w_{p-j}
        const auto& src = prob.w[static_cast<std::size_t>(p - j)];
        for (Index i = 0; i < n; ++i)
            w.real_at(i, j) = src[static_cast<std::size_t>(i)];
    }
    ExpmResult r = expm_block_tri(prob.a, jp, w);
    std::vector<double> out = apply(r.x, prob.w[0]);
    for (Index i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] += r.d.real_at(i, p - 1);
    return out;
}

HamiltonianExp hamiltonian_exp(const Matrix& t, const Matrix& h) {
    if (!t.is_square() || !h.is_square() || h.rows() != t.rows())
        throw DimensionError("T and H must be square of equal size; got " +
                             shape_str(t) + ", " + shape_str(h));
    const double tol = 10.0 * 0x1p-53 * std::max(h.norm_inf(), 1.0);
    Matrix asym = h - h.transpose();
    if (asym.max_abs() > tol)
        throw Error("H is not symmetric: max |H - H^t| = " +
                    std::to_string(asym.max_abs()));
    ExpmResult r = expm_block_tri(t, -t.transpose(), h);
    HamiltonianExp out;
    out.f = std::move(r.x);
    out.y = std::move(r.y);
    out.dh = std::move(r.d);
    return out;
}

std::vector<Matrix> nested_sequence(const Matrix& g00,
                                    const std::vector<NestedLevel>& levels) {
    if (!g00.is_square()) throw DimensionError("G00 must be square");
    std::vector<Matrix> fs;
    fs.reserve(levels.size() + 1);
    Matrix g_acc = g00;  // accumulated block upper triangular matrix
    fs.push_back(expm(g_acc));
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const Matrix& e = levels[k].e_n;
        const Matrix& gkk = levels[k].g_nn;
        if (!gkk.is_square() || e.rows() != g_acc.rows() ||
            e.cols() != gkk.rows())
            throw DimensionError("level " + std::to_string(k) +
                                 " shape mismatch: accumulated " +
                                 shape_str(g_acc) + ", E " + shape_str(e) +
                                 ", G " + shape_str(gkk));
        ExpmResult r = expm_block_tri(g_acc, gkk, e);
        const Index n0 = g_acc.rows();
        const Index n1 = gkk.rows();
        Matrix f(n0 + n1, n0 + n1, fs.back().kind());
        f.set_block(0, 0, fs.back());
        f.set_block(0, n0, r.d);
        f.set_block(n0, n0, r.y);
        fs.push_back(std::move(f));
        Matrix g_next(n0 + n1, n0 + n1, g_acc.kind());
        g_next.set_block(0, 0, g_acc);
        g_next.set_block(0, n0, e);
        g_next.set_block(n0, n0, gkk);
        g_acc = std::move(g_next);
    }
    return fs;
}

Matrix triangular_expm_partitioned(const Matrix& t) {
    const Index n = t.rows();
    if (!t.is_square() || n < 2)
        throw DimensionError("need a square matrix of size at least 2");
    if (!is_upper_triangular(t)) throw Error("matrix is not upper triangular");
    Index best_k = 1;
    double best = -1.0;
    for (Index k = 1; k < n; ++k) {
        const double v = std::max(t.submatrix(0, 0, k, k).norm_inf(),
                                  t.submatrix(k, k, n - k, n - k).norm_inf());
        if (best < 0.0 || v < best) {
            best = v;
            best_k = k;
        }
    }
    const Index k = best_k;
    ExpmResult r = expm_block_tri(t.submatrix(0, 0, k, k),
                                  t.submatrix(k, k, n - k, n - k),
                                  t.submatrix(0, k, k, n - k));
    Matrix f(n, n, t.kind());
    f.set_block(0, 0, r.x);
    f.set_block(0, k, r.d);
    f.set_block(k, k, r.y);
    return f;
}

} // namespace expmbt
