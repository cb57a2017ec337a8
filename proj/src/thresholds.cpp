#include "expmbt/expm_blocktri.hpp"
#include "expmbt/oracle.hpp"

#include <cmath>

namespace expmbt {

namespace {

int degree_slot(int m) {
    for (std::size_t k = 0; k < EllTable::degrees.size(); ++k)
        if (EllTable::degrees[k] == m) return static_cast<int>(k);
    throw Error("unsupported Pade degree " + std::to_string(m));
}

} // namespace

double EllTable::ell_for(int m) const {
    return ell[static_cast<std::size_t>(degree_slot(m))];
}

double EllTable::theta_for(int m) const {
    return theta[static_cast<std::size_t>(degree_slot(m))];
}

const EllTable& EllTable::builtin() {
    // Generated by derive_ell_theta at 150 decimal digits.
    static const EllTable table = [] {
        EllTable t;
        t.ell = {1.0813385777848366e-02, 1.9980632069789489e-01,
                 7.8346084729620447e-01, 1.7824486239692787e+00,
                 4.7403075437668063e+00};
        t.theta = {1.4955852179582915e-02, 2.5393983300632322e-01,
                   9.5041789961629319e-01, 2.0978479612570675e+00,
                   5.3719203511481526e+00};
        return t;
    }();
    return table;
}

std::pair<double, double> derive_ell_theta(int m, unsigned precision_digits) {
    using oracle::BigFloat;
    using oracle::Series;
    degree_slot(m); // validates m
    if (precision_digits < 100) precision_digits = 100;
    oracle::PrecisionGuard guard(precision_digits);

    const BigFloat u = pow(BigFloat(2), -53);
    const std::vector<double>& c = pade_coeffs(m).c;

    std::size_t order = 2 * (static_cast<std::size_t>(m) + 60) + 1;
    for (int attempt = 0; attempt < 6; ++attempt, order = order * 3 / 2) {
        Series p(order + 1, BigFloat(0)), q(order + 1, BigFloat(0));
        // exact rational coefficients, promoted to the working precision
        std::vector<oracle::Rational> cr(static_cast<std::size_t>(m) + 1);
        cr[0] = 1;
        for (int k = 1; k <= m; ++k)
            cr[static_cast<std::size_t>(k)] =
                cr[static_cast<std::size_t>(k - 1)] *
                oracle::Rational(m - k + 1, (2 * m - k + 1) * static_cast<long long>(k));
        for (int k = 0; k <= m; ++k) {
            // note: cpp_int::convert_to<mpfr_float> yields a 1-bit result in
            // this Boost version; direct construction keeps full precision
            BigFloat num(numerator(cr[static_cast<std::size_t>(k)]));
            BigFloat den(denominator(cr[static_cast<std::size_t>(k)]));
            BigFloat v = num / den;
            p[static_cast<std::size_t>(k)] = v;
            q[static_cast<std::size_t>(k)] = (k % 2 == 0) ? v : -v;
        }
        Series r = oracle::series_mul(p, oracle::series_inverse(q, order), order);
        Series em(order + 1, BigFloat(0));
        BigFloat fact(1);
        for (std::size_t k = 0; k <= order; ++k) {
            if (k > 0) fact *= static_cast<unsigned>(k);
            em[k] = ((k % 2 == 0) ? BigFloat(1) : BigFloat(-1)) / fact;
        }
        Series w = oracle::series_mul(em, r, order);
        w[0] -= 1;
        Series g = oracle::series_log1p(w, order);
        Series habs(order + 1, BigFloat(0));
        for (std::size_t k = 0; k <= order; ++k) habs[k] = abs(g[k]);

        auto bound = [&](const BigFloat& z) {
            BigFloat v(0);
            for (std::size_t k = order + 1; k-- > 0;) v = v * z + habs[k];
            return v;
        };
        // derivative of the absolute-coefficient series, which bounds the
        // operator applied to E relative to ||E||
        auto bound_deriv = [&](const BigFloat& z) {
            BigFloat v(0);
            for (std::size_t k = order + 1; k-- > 1;)
                v = v * z + habs[k] * static_cast<unsigned>(k);
            return v;
        };
        auto crossing = [&](auto f) {
            BigFloat lo(0), hi("0.015625");
            int grow = 0;
            while (f(hi) <= u && grow++ < 20) {
                lo = hi;
                hi *= 2;
            }
            for (int it = 0; it < 300; ++it) {
                BigFloat mid = (lo + hi) / 2;
                if (f(mid) <= u)
                    lo = mid;
                else
                    hi = mid;
            }
            return lo;
        };
        BigFloat ell = crossing([&](const BigFloat& z) { return bound_deriv(z); });
        BigFloat theta = crossing([&](const BigFloat& z) { return bound(z) / z; });

        // truncation-tail estimate at the larger crossing
        std::size_t last = order;
        while (last > 2 && habs[last] == 0) --last;
        BigFloat t_last = habs[last] * pow(theta, static_cast<unsigned>(last));
        BigFloat t_prev = habs[last - 2] * pow(theta, static_cast<unsigned>(last - 2));
        bool ok = false;
        if (t_prev > 0) {
            BigFloat ratio = t_last / t_prev;
            if (ratio < 1) {
                BigFloat tail = t_last * ratio / (1 - ratio);
                ok = tail <= u / 100;
            }
        }
        if (ok)
            return {ell.convert_to<double>(), theta.convert_to<double>()};
    }
    throw ConvergenceError(
        "backward-error series truncation order insufficient for m = " +
        std::to_string(m));
}

} // namespace expmbt
