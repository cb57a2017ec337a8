#include "expmbt/densela.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace expmbt {

namespace {

constexpr double kUnitRoundoff = 0x1p-53;

template <typename T>
void gemm(const T* a, Index ar, Index inner, const T* b, Index bc, T* c) {
    // c (ar x bc) = a (ar x inner) * b (inner x bc), all column-major
    for (Index j = 0; j < bc; ++j) {
        T* cj = c + j * ar;
        for (Index k = 0; k < inner; ++k) {
            const T bkj = b[j * inner + k];
            const T* ak = a + k * ar;
            for (Index i = 0; i < ar; ++i) cj[i] += ak[i] * bkj;
        }
    }
}

template <typename T>
void lu_factor_inplace(T* a, Index n, std::vector<int>& piv) {
    piv.resize(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
        Index p = k;
        double best = std::abs(a[k * n + k]);
        for (Index i = k + 1; i < n; ++i) {
            double v = std::abs(a[k * n + i]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv[static_cast<std::size_t>(k)] = static_cast<int>(p);
        if (p != k)
            for (Index j = 0; j < n; ++j) std::swap(a[j * n + k], a[j * n + p]);
        T pivot = a[k * n + k];
        if (pivot == T(0)) throw SingularError("singular Pade denominator");
        for (Index i = k + 1; i < n; ++i) {
            a[k * n + i] /= pivot;
            T lik = a[k * n + i];
            for (Index j = k + 1; j < n; ++j) a[j * n + i] -= lik * a[j * n + k];
        }
    }
}

template <typename T>
void lu_solve_inplace(const T* lu, Index n, const std::vector<int>& piv, T* x,
                      Index nrhs) {
    for (Index r = 0; r < nrhs; ++r) {
        T* col = x + r * n;
        for (Index k = 0; k < n; ++k) {
            int p = piv[static_cast<std::size_t>(k)];
            if (p != k) std::swap(col[k], col[p]);
        }
        for (Index k = 0; k < n; ++k)
            for (Index i = k + 1; i < n; ++i) col[i] -= lu[k * n + i] * col[k];
        for (Index k = n - 1; k >= 0; --k) {
            col[k] /= lu[k * n + k];
            for (Index i = 0; i < k; ++i) col[i] -= lu[k * n + i] * col[k];
        }
    }
}

} // namespace

Matrix matmul(const Matrix& a, const Matrix& b, MatmulCounter* counter) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul dimension mismatch: " + shape_str(a) + " * " +
                             shape_str(b));
    const bool real = a.is_real() && b.is_real();
    Matrix c(a.rows(), b.cols(), real ? ScalarKind::Real : ScalarKind::Complex);
    if (real) {
        gemm(a.real_data(), a.rows(), a.cols(), b.real_data(), b.cols(),
             c.real_data());
    } else {
        Matrix ac = a.to_complex();
        Matrix bc = b.to_complex();
        gemm(ac.cplx_data(), ac.rows(), ac.cols(), bc.cplx_data(), bc.cols(),
             c.cplx_data());
    }
    if (counter && a.rows() > 0 && a.cols() > 0 && b.cols() > 0) ++counter->count;
    return c;
}

LUFactors lu_factor(const Matrix& m) {
    if (!m.is_square())
        throw DimensionError("LU needs a square matrix, got " + shape_str(m));
    LUFactors f;
    f.lu = m;
    if (m.is_real())
        lu_factor_inplace(f.lu.real_data(), m.rows(), f.piv);
    else
        lu_factor_inplace(f.lu.cplx_data(), m.rows(), f.piv);
    return f;
}

Matrix lu_solve_factored(const LUFactors& f, const Matrix& rhs) {
    const Index n = f.lu.rows();
    if (rhs.rows() != n)
        throw DimensionError("solve dimension mismatch: " + shape_str(f.lu) +
                             " vs " + shape_str(rhs));
    if (f.lu.is_real() && rhs.is_real()) {
        Matrix x = rhs;
        lu_solve_inplace(f.lu.real_data(), n, f.piv, x.real_data(), x.cols());
        return x;
    }
    Matrix lu = f.lu.to_complex();
    Matrix x = rhs.to_complex();
    lu_solve_inplace(lu.cplx_data(), n, f.piv, x.cplx_data(), x.cols());
    return x;
}

Matrix lu_solve(const Matrix& m, const Matrix& rhs, SolveSide side) {
    if (side == SolveSide::Left) return lu_solve_factored(lu_factor(m), rhs);
    // S*M = RHS  <=>  M^T S^T = RHS^T
    Matrix st = lu_solve_factored(lu_factor(m.transpose()), rhs.transpose());
    return st.transpose();
}

SchurForm schur_decompose(const Matrix& m) {
    if (!m.is_square())
        throw DimensionError("Schur needs a square matrix, got " + shape_str(m));
    const Index n = m.rows();
    SchurForm sf;
    if (n == 0) {
        sf.Q = Matrix(0, 0, m.kind());
        sf.T = Matrix(0, 0, m.kind());
        return sf;
    }
    if (m.is_real()) {
        Eigen::Map<const Eigen::MatrixXd> em(m.real_data(), n, n);
        Eigen::RealSchur<Eigen::MatrixXd> rs;
        rs.setMaxIterations(static_cast<Eigen::Index>(30 * n));
        rs.compute(em);
        if (rs.info() != Eigen::Success)
            throw ConvergenceError("Schur QR iteration failed to converge within " +
                                   std::to_string(30 * n) + " iterations");
        sf.Q = Matrix(n, n);
        sf.T = Matrix(n, n);
        Eigen::Map<Eigen::MatrixXd>(sf.Q.real_data(), n, n) = rs.matrixU();
        Eigen::Map<Eigen::MatrixXd>(sf.T.real_data(), n, n) = rs.matrixT();
        // Scrub roundoff below the subdiagonal so triangularity tests are exact.
        for (Index j = 0; j < n; ++j)
            for (Index i = j + 2; i < n; ++i) sf.T.real_at(i, j) = 0.0;
        sf.is_quasi = false;
        for (Index k = 0; k + 1 < n; ++k)
            if (sf.T.real_at(k + 1, k) != 0.0) sf.is_quasi = true;
    } else {
        Eigen::Map<const Eigen::MatrixXcd> em(m.cplx_data(), n, n);
        Eigen::ComplexSchur<Eigen::MatrixXcd> cs;
        cs.setMaxIterations(static_cast<Eigen::Index>(30 * n));
        cs.compute(em);
        if (cs.info() != Eigen::Success)
            throw ConvergenceError("Schur QR iteration failed to converge within " +
                                   std::to_string(30 * n) + " iterations");
        sf.Q = Matrix(n, n, ScalarKind::Complex);
        sf.T = Matrix(n, n, ScalarKind::Complex);
        Eigen::Map<Eigen::MatrixXcd>(sf.Q.cplx_data(), n, n) = cs.matrixU();
        Eigen::Map<Eigen::MatrixXcd>(sf.T.cplx_data(), n, n) = cs.matrixT();
        for (Index j = 0; j < n; ++j)
            for (Index i = j + 1; i < n; ++i) sf.T.cplx_at(i, j) = Complex(0.0);
        sf.is_quasi = false;
    }
    return sf;
}

std::vector<Complex> quasi_tri_eigenvalues(const Matrix& t) {
    const Index n = t.rows();
    std::vector<Complex> ev;
    ev.reserve(static_cast<std::size_t>(n));
    if (!t.is_real()) {
        for (Index i = 0; i < n; ++i) ev.push_back(t.get(i, i));
        return ev;
    }
    Index i = 0;
    while (i < n) {
        if (i + 1 < n && t.real_at(i + 1, i) != 0.0) {
            double a = t.real_at(i, i), b = t.real_at(i, i + 1);
            double c = t.real_at(i + 1, i), d = t.real_at(i + 1, i + 1);
            double mu = 0.5 * (a + d);
            double disc = 0.25 * (a - d) * (a - d) + b * c;
            if (disc >= 0.0) {
                double r = std::sqrt(disc);
                ev.emplace_back(mu + r);
                ev.emplace_back(mu - r);
            } else {
                double r = std::sqrt(-disc);
                ev.emplace_back(mu, r);
                ev.emplace_back(mu, -r);
            }
            i += 2;
        } else {
            ev.emplace_back(t.real_at(i, i));
            i += 1;
        }
    }
    return ev;
}

bool is_upper_triangular(const Matrix& m) {
    if (!m.is_square()) return false;
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = j + 1; i < m.rows(); ++i)
            if (m.get(i, j) != Complex(0.0)) return false;
    return true;
}

bool is_quasi_upper_triangular(const Matrix& m) {
    if (!m.is_square()) return false;
    if (!m.is_real()) return is_upper_triangular(m);
    const Index n = m.rows();
    for (Index j = 0; j < n; ++j)
        for (Index i = j + 2; i < n; ++i)
            if (m.real_at(i, j) != 0.0) return false;
    for (Index k = 0; k + 2 < n; ++k)
        if (m.real_at(k + 1, k) != 0.0 && m.real_at(k + 2, k + 1) != 0.0)
            return false;
    return true;
}

namespace {

// Diagonal block partition of a (quasi-)triangular matrix: start index of
// each block; real 2x2 bumps give blocks of size 2.
std::vector<Index> diag_blocks(const Matrix& t) {
    std::vector<Index> starts;
    const Index n = t.rows();
    Index i = 0;
    while (i < n) {
        starts.push_back(i);
        if (t.is_real() && i + 1 < n && t.real_at(i + 1, i) != 0.0)
            i += 2;
        else
            i += 1;
    }
    starts.push_back(n);
    return starts;
}

// Solve the small dense system arising from one (row-block, col-block) pair
// of the triangular Sylvester equation: (I (x) Tkk + Tjj^T (x) I) y = rhs.
template <typename T>
void small_sylvester_block(const Matrix& ta, Index k0, Index h, const Matrix& tb,
                           Index j0, Index w, std::vector<T>& rhs, double sep_tol) {
    const Index dim = h * w;
    std::vector<T> sys(static_cast<std::size_t>(dim * dim), T(0));
    auto tav = [&](Index i, Index j) {
        if constexpr (std::is_same_v<T, double>)
            return ta.real_at(k0 + i, k0 + j);
        else
            return ta.get(k0 + i, k0 + j);
    };
    auto tbv = [&](Index i, Index j) {
        if constexpr (std::is_same_v<T, double>)
            return tb.real_at(j0 + i, j0 + j);
        else
            return tb.get(j0 + i, j0 + j);
    };
    // unknown ordering: y[(c)*h + r] = Y(r, c), column-major within the block
    for (Index c = 0; c < w; ++c)
        for (Index r = 0; r < h; ++r) {
            Index row = c * h + r;
            for (Index rr = 0; rr < h; ++rr)
                sys[static_cast<std::size_t>((c * h + rr) * dim + row)] += tav(r, rr);
            for (Index cc = 0; cc < w; ++cc)
                sys[static_cast<std::size_t>((cc * h + r) * dim + row)] += tbv(cc, c);
        }
    // Gaussian elimination with partial pivoting on the tiny system.
    std::vector<int> piv;
    try {
        lu_factor_inplace(sys.data(), dim, piv);
    } catch (const SingularError&) {
        throw IllSeparatedError("ill-separated Sylvester operands");
    }
    (void)sep_tol;
    lu_solve_inplace(sys.data(), dim, piv, rhs.data(), Index(1));
}

template <typename T>
Matrix solve_tri_sylvester(const Matrix& ta, const Matrix& tb, const Matrix& f,
                           double sep_tol) {
    const Index n = ta.rows();
    const Index d = tb.rows();
    constexpr bool is_real = std::is_same_v<T, double>;
    Matrix y(n, d, is_real ? ScalarKind::Real : ScalarKind::Complex);
    auto yget = [&](Index i, Index j) -> T& {
        if constexpr (is_real)
            return y.real_at(i, j);
        else
            return y.cplx_at(i, j);
    };
    std::vector<Index> rb = diag_blocks(ta);
    std::vector<Index> cb = diag_blocks(tb);
    const Index nrb = static_cast<Index>(rb.size()) - 1;
    const Index ncb = static_cast<Index>(cb.size()) - 1;
    for (Index jb = 0; jb < ncb; ++jb) {
        const Index j0 = cb[static_cast<std::size_t>(jb)];
        const Index w = cb[static_cast<std::size_t>(jb) + 1] - j0;
        for (Index kb = nrb - 1; kb >= 0; --kb) {
            const Index k0 = rb[static_cast<std::size_t>(kb)];
            const Index h = rb[static_cast<std::size_t>(kb) + 1] - k0;
            std::vector<T> rhs(static_cast<std::size_t>(h * w));
            for (Index c = 0; c < w; ++c)
                for (Index r = 0; r < h; ++r) {
                    T v;
                    if constexpr (is_real)
                        v = f.real_at(k0 + r, j0 + c);
                    else
                        v = f.get(k0 + r, j0 + c);
                    // subtract TA(k, l>k) * Y(l, j)
                    for (Index l = k0 + h; l < n; ++l) {
                        T t;
                        if constexpr (is_real)
                            t = ta.real_at(k0 + r, l);
                        else
                            t = ta.get(k0 + r, l);
                        v -= t * yget(l, j0 + c);
                    }
                    // subtract Y(k, i<j) * TB(i, j)
                    for (Index i = 0; i < j0; ++i) {
                        T t;
                        if constexpr (is_real)
                            t = tb.real_at(i, j0 + c);
                        else
                            t = tb.get(i, j0 + c);
                        v -= yget(k0 + r, i) * t;
                    }
                    rhs[static_cast<std::size_t>(c * h + r)] = v;
                }
            small_sylvester_block<T>(ta, k0, h, tb, j0, w, rhs, sep_tol);
            for (Index c = 0; c < w; ++c)
                for (Index r = 0; r < h; ++r)
                    yget(k0 + r, j0 + c) = rhs[static_cast<std::size_t>(c * h + r)];
        }
    }
    return y;
}

} // namespace

Matrix sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c) {
    if (!a.is_square() || !b.is_square() || c.rows() != a.rows() ||
        c.cols() != b.rows())
        throw DimensionError("sylvester dimension mismatch: " + shape_str(a) +
                             ", " + shape_str(b) + ", " + shape_str(c));
    if (a.empty() || b.empty()) return Matrix(a.rows(), b.rows(), c.kind());

    const bool complex_path = !a.is_real() || !b.is_real() || !c.is_real();

    SchurForm sa, sb;
    bool ta_direct = complex_path ? is_upper_triangular(a)
                                  : is_quasi_upper_triangular(a);
    bool tb_direct = complex_path ? is_upper_triangular(b)
                                  : is_quasi_upper_triangular(b);
    if (ta_direct) {
        sa.T = complex_path ? a.to_complex() : a;
    } else {
        sa = schur_decompose(complex_path ? a.to_complex() : a);
    }
    if (tb_direct) {
        sb.T = complex_path ? b.to_complex() : b;
    } else {
        sb = schur_decompose(complex_path ? b.to_complex() : b);
    }

    const double sep_tol = 10.0 * kUnitRoundoff * (a.norm_inf() + b.norm_inf());
    std::vector<Complex> la = quasi_tri_eigenvalues(sa.T);
    std::vector<Complex> lb = quasi_tri_eigenvalues(sb.T);
    for (const Complex& x : la)
        for (const Complex& y : lb)
            if (std::abs(x + y) < sep_tol)
                throw IllSeparatedError("ill-separated Sylvester operands");

    // F = Qa^H C Qb
    Matrix f = c;
    if (complex_path) f.promote();
    if (!ta_direct) f = matmul(sa.Q.conj_transpose(), f);
    if (!tb_direct) f = matmul(f, sb.Q);

    Matrix y = complex_path ? solve_tri_sylvester<Complex>(sa.T, sb.T, f, sep_tol)
                            : solve_tri_sylvester<double>(sa.T, sb.T, f, sep_tol);

    Matrix r = y;
    if (!ta_direct) r = matmul(sa.Q, r);
    if (!tb_direct) r = matmul(r, sb.Q.conj_transpose());

#ifndef NDEBUG
    {
        Matrix res = matmul(a, r) + matmul(r, b) - c;
        double bound = 1e5 * kUnitRoundoff *
                       ((a.norm_inf() + b.norm_inf()) * r.norm_inf() + c.norm_inf());
        assert(res.norm_inf() <= std::max(bound, 1e-300));
    }
#endif
    return r;
}

Matrix exp2x2(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2 || !m.is_real())
        throw DimensionError("exp2x2 needs a real 2x2 matrix, got " + shape_str(m));
    const double a = m.real_at(0, 0), b = m.real_at(0, 1);
    const double c = m.real_at(1, 0), d = m.real_at(1, 1);
    const double mu = 0.5 * (a + d);
    const double delta2 = 0.25 * (a - d) * (a - d) + b * c;
    double coshlike, sinch;
    if (std::abs(delta2) < 1e-8) {
        // |delta| < 1e-4: truncated series in delta^2 to avoid cancellation
        coshlike = 1.0 + delta2 * (1.0 / 2.0 + delta2 * (1.0 / 24.0 + delta2 * (1.0 / 720.0 + delta2 / 40320.0)));
        sinch = 1.0 + delta2 * (1.0 / 6.0 + delta2 * (1.0 / 120.0 + delta2 * (1.0 / 5040.0 + delta2 / 362880.0)));
    } else if (delta2 > 0.0) {
        double delta = std::sqrt(delta2);
        coshlike = std::cosh(delta);
        sinch = std::sinh(delta) / delta;
    } else {
        double delta = std::sqrt(-delta2);
        coshlike = std::cos(delta);
        sinch = std::sin(delta) / delta;
    }
    const double emu = std::exp(mu);
    Matrix r(2, 2);
    r.real_at(0, 0) = emu * (coshlike + sinch * (a - mu));
    r.real_at(0, 1) = emu * sinch * b;
    r.real_at(1, 0) = emu * sinch * c;
    r.real_at(1, 1) = emu * (coshlike + sinch * (d - mu));
    return r;
}

} // namespace expmbt
