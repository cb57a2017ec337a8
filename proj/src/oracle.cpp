#include "expmbt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace expmbt::oracle {

namespace {

// Minimal complex arithmetic over BigFloat for root finding.
struct BigComplex {
    BigFloat re, im;
    BigComplex() : re(0), im(0) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(double r) : re(r), im(0) {}
};

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
}
BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
}
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
BigFloat big_abs(const BigComplex& z) {
    return sqrt(z.re * z.re + z.im * z.im);
}
BigComplex big_sqrt(const BigComplex& z) {
    BigFloat r = big_abs(z);
    if (r == 0) return BigComplex(0.0);
    BigFloat w = sqrt((r + z.re) / 2);
    if (w > 0) return {w, z.im / (2 * w)};
    BigFloat v = sqrt((r - z.re) / 2);
    if (z.im < 0) v = -v;
    return {z.im == 0 ? BigFloat(0) : z.im / (2 * v), v};
}

std::vector<BigComplex> durand_kerner(std::vector<BigComplex> c, unsigned digits) {
    // c: monic-izable coefficients, ascending powers
    while (c.size() > 1 && big_abs(c.back()) == 0) c.pop_back();
    const std::size_t n = c.size() - 1;
    std::vector<BigComplex> z(n);
    if (n == 0) return z;
    for (std::size_t k = 0; k < n; ++k) {
        BigComplex t = c[k] / c[n];
        c[k] = t;
    }
    c[n] = BigComplex(1.0);
    // Fujiwara bound for an initial circle
    BigFloat radius(1);
    for (std::size_t k = 0; k < n; ++k) {
        BigFloat m = big_abs(c[k]);
        if (m > 0) {
            BigFloat cand = 2 * pow(m, BigFloat(1) / BigFloat(static_cast<int>(n - k)));
            radius = std::max(radius, cand);
        }
    }
    const double two_pi = 6.283185307179586;
    for (std::size_t i = 0; i < n; ++i) {
        double ang = two_pi * (static_cast<double>(i) + 0.37) / static_cast<double>(n);
        z[i] = {radius * BigFloat(std::cos(ang)), radius * BigFloat(std::sin(ang))};
    }
    auto eval = [&](const BigComplex& x) {
        BigComplex v = c[n];
        for (std::size_t k = n; k-- > 0;) v = v * x + c[k];
        return v;
    };
    BigFloat tol = pow(BigFloat(10), -static_cast<int>(digits) + 5);
    for (int iter = 0; iter < 2000; ++iter) {
        BigFloat worst(0);
        for (std::size_t i = 0; i < n; ++i) {
            BigComplex denom(1.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom = denom * (z[i] - z[j]);
            BigComplex delta = eval(z[i]) / denom;
            z[i] = z[i] - delta;
            BigFloat scale = std::max(BigFloat(1), big_abs(z[i]));
            worst = std::max(worst, big_abs(delta) / scale);
        }
        if (worst < tol) return z;
    }
    throw ConvergenceError("polynomial root iteration did not converge");
}

} // namespace

BigMatrix::BigMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
    a_.assign(static_cast<std::size_t>(rows * cols), BigFloat(0));
}

BigMatrix BigMatrix::identity(Index n) {
    BigMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

BigMatrix BigMatrix::from(const Matrix& m) {
    if (!m.is_real())
        throw DimensionError("reference matrices are real-only");
    BigMatrix b(m.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) b.at(i, j) = m.real_at(i, j);
    return b;
}

BigMatrix BigMatrix::submatrix(Index i0, Index j0, Index r, Index c) const {
    BigMatrix m(r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
}

void BigMatrix::set_block(Index i0, Index j0, const BigMatrix& block) {
    for (Index j = 0; j < block.cols(); ++j)
        for (Index i = 0; i < block.rows(); ++i) at(i0 + i, j0 + j) = block.at(i, j);
}

BigFloat BigMatrix::norm_inf() const {
    BigFloat mx(0);
    for (Index i = 0; i < rows_; ++i) {
        BigFloat s(0);
        for (Index j = 0; j < cols_; ++j) s += abs(at(i, j));
        mx = std::max(mx, s);
    }
    return mx;
}

Matrix BigMatrix::to_double() const {
    Matrix m(rows_, cols_);
    for (Index j = 0; j < cols_; ++j)
        for (Index i = 0; i < rows_; ++i)
            m.real_at(i, j) = at(i, j).convert_to<double>();
    return m;
}

BigMatrix& BigMatrix::operator+=(const BigMatrix& rhs) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

BigMatrix& BigMatrix::operator-=(const BigMatrix& rhs) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

BigMatrix& BigMatrix::operator*=(const BigFloat& s) {
    for (BigFloat& x : a_) x *= s;
    return *this;
}

BigMatrix big_matmul(const BigMatrix& a, const BigMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("big_matmul shape mismatch");
    BigMatrix c(a.rows(), b.cols());
    for (Index j = 0; j < b.cols(); ++j)
        for (Index k = 0; k < a.cols(); ++k) {
            const BigFloat& bkj = b.at(k, j);
            if (bkj == 0) continue;
            for (Index i = 0; i < a.rows(); ++i) c.at(i, j) += a.at(i, k) * bkj;
        }
    return c;
}

BigMatrix expm_ref(const BigMatrix& m, unsigned digits) {
    PrecisionGuard guard(digits + 20);
    const Index n = m.rows();
    BigMatrix x = m;
    int s = 0;
    BigFloat nrm = x.norm_inf();
    while (nrm > BigFloat(1) / 8) {
        nrm /= 2;
        ++s;
    }
    if (s > 0) {
        BigFloat scale = pow(BigFloat(2), -s);
        x *= scale;
    }
    BigMatrix sum = BigMatrix::identity(n);
    BigMatrix term = BigMatrix::identity(n);
    BigFloat tol = pow(BigFloat(10), -static_cast<int>(digits) - 10);
    for (int k = 1; k < 10000; ++k) {
        term = big_matmul(term, x);
        term *= BigFloat(1) / k;
        sum += term;
        if (term.norm_inf() <= tol * sum.norm_inf()) break;
    }
    for (int k = 0; k < s; ++k) sum = big_matmul(sum, sum);
    return sum;
}

BigMatrix expm_ref(const Matrix& m, unsigned digits) {
    PrecisionGuard guard(digits + 20);
    return expm_ref(BigMatrix::from(m), digits);
}

BigMatrix Lexp_ref(const Matrix& a, const Matrix& b, const Matrix& e,
                   unsigned digits) {
    PrecisionGuard guard(digits + 20);
    const Index n = a.rows(), d = b.rows();
    BigMatrix block(n + d, n + d);
    block.set_block(0, 0, BigMatrix::from(a));
    block.set_block(0, n, BigMatrix::from(e));
    block.set_block(n, n, BigMatrix::from(b));
    BigMatrix f = expm_ref(block, digits);
    return f.submatrix(0, n, n, d);
}

BigMatrix phi_ref(const BigMatrix& a, int j, unsigned digits) {
    double nrm = a.norm_inf().convert_to<double>();
    // series for e^{|z|} peaks near |z|; add guard digits for the cancellation
    unsigned work = digits + 20 + static_cast<unsigned>(0.5 * nrm);
    PrecisionGuard guard(work);
    const Index n = a.rows();
    BigFloat jfact(1);
    for (int k = 2; k <= j; ++k) jfact *= k;
    BigMatrix term = BigMatrix::identity(n);
    term *= BigFloat(1) / jfact;
    BigMatrix sum = term;
    BigFloat tol = pow(BigFloat(10), -static_cast<int>(digits) - 10);
    for (int k = 1; k < 10000; ++k) {
        term = big_matmul(term, a);
        term *= BigFloat(1) / (k + j);
        sum += term;
        if (static_cast<double>(k) > nrm && term.norm_inf() <= tol * std::max(sum.norm_inf(), BigFloat(1)))
            break;
    }
    return sum;
}

std::vector<Complex> poly_roots(const std::vector<BigFloat>& coeffs,
                                unsigned digits) {
    PrecisionGuard guard(digits);
    std::vector<BigComplex> c;
    c.reserve(coeffs.size());
    for (const BigFloat& x : coeffs) c.push_back({x, BigFloat(0)});
    std::vector<BigComplex> z = durand_kerner(std::move(c), digits);
    std::vector<Complex> out;
    out.reserve(z.size());
    for (const BigComplex& r : z)
        out.emplace_back(r.re.convert_to<double>(), r.im.convert_to<double>());
    return out;
}

std::vector<Complex> eigenvalues_ref(const Matrix& m, unsigned digits) {
    PrecisionGuard guard(digits);
    const Index n = m.rows();
    BigMatrix a = BigMatrix::from(m);
    // Faddeev-LeVerrier: characteristic polynomial coefficients
    std::vector<BigFloat> c(static_cast<std::size_t>(n) + 1, BigFloat(0));
    c[static_cast<std::size_t>(n)] = 1; // monic, ascending powers
    BigMatrix b = a;
    BigFloat ck(0);
    for (Index k = 1; k <= n; ++k) {
        if (k > 1) {
            BigMatrix shifted = b;
            for (Index i = 0; i < n; ++i) shifted.at(i, i) += ck;
            b = big_matmul(a, shifted);
        }
        BigFloat tr(0);
        for (Index i = 0; i < n; ++i) tr += b.at(i, i);
        ck = -tr / k;
        c[static_cast<std::size_t>(n - k)] = ck;
    }
    return poly_roots(c, digits);
}

double rel_error_inf(const Matrix& approx, const BigMatrix& ref) {
    BigMatrix diff = BigMatrix::from(approx.is_real() ? approx : approx.real_part());
    diff -= ref;
    BigFloat denom = ref.norm_inf();
    if (denom == 0) return diff.norm_inf() == 0 ? 0.0 : HUGE_VAL;
    return (diff.norm_inf() / denom).convert_to<double>();
}

std::vector<Rational> pade_exp_coeffs_exact(int m) {
    // Unknowns: p_0..p_m, q_1..q_m with q_0 = 1, from matching
    // q(z) e^z - p(z) = O(z^{2m+1}).
    const int nu = 2 * m + 1;
    std::vector<std::vector<Rational>> sys(
        static_cast<std::size_t>(nu),
        std::vector<Rational>(static_cast<std::size_t>(nu) + 1, Rational(0)));
    std::vector<Rational> inv_fact(static_cast<std::size_t>(2 * m + 1));
    inv_fact[0] = 1;
    for (int k = 1; k <= 2 * m; ++k)
        inv_fact[static_cast<std::size_t>(k)] =
            inv_fact[static_cast<std::size_t>(k - 1)] / k;
    for (int k = 0; k <= 2 * m; ++k) {
        auto& row = sys[static_cast<std::size_t>(k)];
        // sum_i q_i / (k-i)! - p_k = 0, with q_0 = 1 moved to the RHS
        for (int i = 1; i <= std::min(k, m); ++i)
            row[static_cast<std::size_t>(m + i)] =
                inv_fact[static_cast<std::size_t>(k - i)];
        if (k <= m) row[static_cast<std::size_t>(k)] = -1;
        row[static_cast<std::size_t>(nu)] = -inv_fact[static_cast<std::size_t>(k)];
    }
    // exact rational Gaussian elimination
    for (int col = 0; col < nu; ++col) {
        int p = -1;
        for (int r = col; r < nu; ++r)
            if (sys[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                p = r;
                break;
            }
        if (p < 0) throw SingularError("degenerate Pade system");
        std::swap(sys[static_cast<std::size_t>(col)], sys[static_cast<std::size_t>(p)]);
        Rational piv = sys[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (int r = 0; r < nu; ++r) {
            if (r == col) continue;
            Rational f = sys[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / piv;
            if (f == 0) continue;
            for (int cc = col; cc <= nu; ++cc)
                sys[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    f * sys[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
        }
    }
    std::vector<Rational> p_coeffs(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k)
        p_coeffs[static_cast<std::size_t>(k)] =
            sys[static_cast<std::size_t>(k)][static_cast<std::size_t>(nu)] /
            sys[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    return p_coeffs;
}

namespace {

// Maclaurin coefficients of tanh(z)/z in x = z^2, up to x^order.
std::vector<BigFloat> tau_series(std::size_t order) {
    std::vector<BigFloat> sinh_c(order + 1), cosh_c(order + 1);
    BigFloat fact(1);
    for (std::size_t k = 0; k <= order; ++k) {
        // sinh z / z = sum x^k/(2k+1)!, cosh z = sum x^k/(2k)!
        if (k > 0) fact *= BigFloat(2 * k - 1) * BigFloat(2 * k);
        cosh_c[k] = BigFloat(1) / fact;
        sinh_c[k] = BigFloat(1) / (fact * BigFloat(2 * k + 1));
    }
    Series inv_cosh = series_inverse(cosh_c, order);
    return series_mul(sinh_c, inv_cosh, order);
}

} // namespace

TauPadeHp tau_pade8_hp(unsigned digits) {
    PrecisionGuard guard(digits);
    std::vector<BigFloat> t = tau_series(8);
    // [4/4] in x: denominator d_0 = 1; for k = 5..8:
    // sum_{i=1..4} d_i t_{k-i} = -t_k
    const int nd = 4;
    std::vector<std::vector<BigFloat>> sys(
        static_cast<std::size_t>(nd),
        std::vector<BigFloat>(static_cast<std::size_t>(nd) + 1, BigFloat(0)));
    for (int k = 5; k <= 8; ++k)
        for (int i = 1; i <= nd; ++i)
            sys[static_cast<std::size_t>(k - 5)][static_cast<std::size_t>(i - 1)] =
                t[static_cast<std::size_t>(k - i)];
    for (int k = 5; k <= 8; ++k)
        sys[static_cast<std::size_t>(k - 5)][static_cast<std::size_t>(nd)] =
            -t[static_cast<std::size_t>(k)];
    for (int col = 0; col < nd; ++col) {
        int p = col;
        for (int r = col + 1; r < nd; ++r)
            if (abs(sys[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                abs(sys[static_cast<std::size_t>(p)][static_cast<std::size_t>(col)]))
                p = r;
        std::swap(sys[static_cast<std::size_t>(col)], sys[static_cast<std::size_t>(p)]);
        for (int r = 0; r < nd; ++r) {
            if (r == col) continue;
            BigFloat f = sys[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                         sys[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int cc = col; cc <= nd; ++cc)
                sys[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    f * sys[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
        }
    }
    TauPadeHp tp;
    tp.den.assign(5, BigFloat(0));
    tp.den[0] = 1;
    for (int i = 1; i <= nd; ++i)
        tp.den[static_cast<std::size_t>(i)] =
            sys[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(nd)] /
            sys[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)];
    tp.num.assign(5, BigFloat(0));
    for (int k = 0; k <= 4; ++k) {
        BigFloat v(0);
        for (int i = 0; i <= std::min(k, 4); ++i)
            v += tp.den[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(k - i)];
        tp.num[static_cast<std::size_t>(k)] = v;
    }
    auto z_roots = [&](const std::vector<BigFloat>& poly) {
        std::vector<BigComplex> c;
        for (const BigFloat& x : poly) c.push_back({x, BigFloat(0)});
        std::vector<BigComplex> xr = durand_kerner(std::move(c), digits);
        std::vector<Complex> out;
        for (const BigComplex& x : xr) {
            BigComplex s = big_sqrt(x);
            out.emplace_back(s.re.convert_to<double>(), s.im.convert_to<double>());
            out.emplace_back(-s.re.convert_to<double>(), -s.im.convert_to<double>());
        }
        return out;
    };
    tp.alpha = z_roots(tp.num);
    tp.beta = z_roots(tp.den);
    return tp;
}

BigFloat tau_pade8_error_at_iz(double z, unsigned digits) {
    PrecisionGuard guard(digits);
    TauPadeHp tp = tau_pade8_hp(digits);
    BigFloat zz(z);
    BigFloat x = -zz * zz; // (iz)^2
    auto horner = [&](const std::vector<BigFloat>& c) {
        BigFloat v(0);
        for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
        return v;
    };
    BigFloat tau_iz = tan(zz) / zz; // tanh(iz)/(iz) = tan(z)/z
    BigFloat r8 = horner(tp.num) / horner(tp.den);
    return abs(tau_iz - r8);
}

Series series_mul(const Series& a, const Series& b, std::size_t order) {
    Series c(order + 1, BigFloat(0));
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

Series series_inverse(const Series& a, std::size_t order) {
    Series r(order + 1, BigFloat(0));
    r[0] = BigFloat(1) / a[0];
    for (std::size_t k = 1; k <= order; ++k) {
        BigFloat s(0);
        for (std::size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * r[k - i];
        r[k] = -s / a[0];
    }
    return r;
}

Series series_log1p(const Series& w, std::size_t order) {
    Series g(order + 1, BigFloat(0));
    std::size_t val = 0;
    while (val <= order && (val >= w.size() || w[val] == 0)) ++val;
    if (val > order) return g; // w is zero to this order
    Series wk = w;
    wk.resize(order + 1, BigFloat(0)); // inputs may be shorter than the order
    int sign = 1;
    for (std::size_t k = 1; k * val <= order; ++k) {
        if (k > 1) wk = series_mul(wk, w, order);
        for (std::size_t j = 0; j <= order; ++j)
            g[j] += BigFloat(sign) * wk[j] / BigFloat(static_cast<unsigned>(k));
        sign = -sign;
    }
    return g;
}

} // namespace expmbt::oracle
