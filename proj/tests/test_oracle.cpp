#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "expmbt/oracle.hpp"

using namespace expmbt;
using oracle::BigFloat;
using oracle::BigMatrix;

namespace {

Matrix randn_mat(Index r, Index c, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> nd;
    Matrix m(r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) m.real_at(i, j) = nd(rng) * scale;
    return m;
}

Matrix scalar(double v) {
    Matrix m(1, 1);
    m.real_at(0, 0) = v;
    return m;
}

double big_to_double(const BigFloat& v) { return static_cast<double>(v); }

Matrix mrows(const std::vector<std::vector<double>>& rows) {
    return Matrix::from_rows(rows);
}

} // namespace

TEST_CASE("exponential of zero is the identity") {
    oracle::PrecisionGuard guard(60);
    BigMatrix r = oracle::expm_ref(Matrix(3, 3), 60);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j)
            CHECK(big_to_double(r.at(i, j)) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("exponential of a nilpotent block") {
    Matrix n = mrows({{0.0, 1.0}, {0.0, 0.0}});
    oracle::PrecisionGuard guard(60);
    BigMatrix r = oracle::expm_ref(n, 60);
    CHECK(big_to_double(r.at(0, 0)) == 1.0);
    CHECK(big_to_double(r.at(0, 1)) == 1.0);
    CHECK(big_to_double(r.at(1, 0)) == 0.0);
    CHECK(big_to_double(r.at(1, 1)) == 1.0);
}

TEST_CASE("exponential of a diagonal matrix") {
    Matrix d = mrows({{1.0, 0.0}, {0.0, 2.0}});
    oracle::PrecisionGuard guard(60);
    BigMatrix r = oracle::expm_ref(d, 60);
    CHECK(big_to_double(r.at(0, 0)) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(big_to_double(r.at(1, 1)) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
    CHECK(big_to_double(r.at(0, 1)) == 0.0);
}

TEST_CASE("scalar coupling block is a divided difference") {
    oracle::PrecisionGuard guard(60);
    BigMatrix d = oracle::Lexp_ref(scalar(1.0), scalar(-1.0), scalar(1.0), 60);
    CHECK(big_to_double(d.at(0, 0)) == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));

    // confluent case: equal arguments give e^a itself
    BigMatrix c = oracle::Lexp_ref(scalar(0.7), scalar(0.7), scalar(1.0), 60);
    CHECK(big_to_double(c.at(0, 0)) == doctest::Approx(std::exp(0.7)).epsilon(1e-15));
}

TEST_CASE("coupling block solves its Sylvester identity") {
    // A D - D B = e^A E - E e^B characterizes D when the spectra are disjoint.
    std::mt19937_64 rng(41);
    Matrix a = randn_mat(5, 5, rng);
    Matrix b = randn_mat(4, 4, rng);
    Matrix e = randn_mat(5, 4, rng);
    oracle::PrecisionGuard guard(80);
    BigMatrix ba = BigMatrix::from(a), bb = BigMatrix::from(b),
              be = BigMatrix::from(e);
    BigMatrix d = oracle::Lexp_ref(a, b, e, 80);
    BigMatrix lhs = oracle::big_matmul(ba, d) - oracle::big_matmul(d, bb);
    BigMatrix rhs = oracle::big_matmul(oracle::expm_ref(ba, 80), be) -
                    oracle::big_matmul(be, oracle::expm_ref(bb, 80));
    BigFloat scale = lhs.norm_inf() + rhs.norm_inf();
    CHECK(big_to_double((lhs - rhs).norm_inf()) <= 1e-60 * big_to_double(scale));
}

TEST_CASE("coupling block matches a high-precision Frechet difference") {
    std::mt19937_64 rng(42);
    Matrix a = randn_mat(4, 4, rng);
    Matrix e = randn_mat(4, 4, rng);
    // With B = A, D equals the Frechet derivative of exp at A in direction E;
    // compare against a central difference taken far below double roundoff.
    oracle::PrecisionGuard guard(140);
    BigFloat h = pow(BigFloat(10), -30);
    BigMatrix ap = BigMatrix::from(a), em = BigMatrix::from(e);
    BigMatrix fp = ap, fm = ap;
    for (Index j = 0; j < 4; ++j)
        for (Index i = 0; i < 4; ++i) {
            fp.at(i, j) += h * em.at(i, j);
            fm.at(i, j) -= h * em.at(i, j);
        }
    BigMatrix diff = oracle::expm_ref(fp, 140) - oracle::expm_ref(fm, 140);
    BigFloat inv2h = 1 / (2 * h);
    diff *= inv2h;
    BigMatrix d = oracle::Lexp_ref(a, a, e, 140);
    CHECK(big_to_double((diff - d).norm_inf()) <=
          1e-55 * big_to_double(d.norm_inf()));
}

TEST_CASE("phi functions at zero and simple arguments") {
    oracle::PrecisionGuard guard(60);
    BigMatrix z(2, 2);
    for (int j = 0; j <= 4; ++j) {
        BigMatrix p = oracle::phi_ref(z, j, 60);
        double fact = 1.0;
        for (int k = 2; k <= j; ++k) fact *= k;
        CHECK(big_to_double(p.at(0, 0)) == doctest::Approx(1.0 / fact).epsilon(1e-15));
        CHECK(big_to_double(p.at(0, 1)) == 0.0);
    }

    BigMatrix one(1, 1);
    one.at(0, 0) = 1;
    BigMatrix p1 = oracle::phi_ref(one, 1, 60);
    CHECK(big_to_double(p1.at(0, 0)) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));

    // nilpotent argument: phi_1(N) = I + N/2 exactly
    BigMatrix n(2, 2);
    n.at(0, 1) = 1;
    BigMatrix pn = oracle::phi_ref(n, 1, 60);
    CHECK(big_to_double(pn.at(0, 0)) == 1.0);
    CHECK(big_to_double(pn.at(0, 1)) == 0.5);
}

TEST_CASE("eigenvalues of known spectra") {
    Matrix d = mrows(
        {{3.0, 1.0, 0.0}, {0.0, -2.0, 5.0}, {0.0, 0.0, 1.0}});
    auto ev = oracle::eigenvalues_ref(d);
    REQUIRE(ev.size() == 3);
    std::vector<double> re;
    for (const Complex& z : ev) {
        CHECK(std::abs(z.imag()) <= 1e-12);
        re.push_back(z.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(re[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(re[2] == doctest::Approx(3.0).epsilon(1e-12));

    Matrix rot = mrows({{0.0, 1.0}, {-1.0, 0.0}});
    auto er = oracle::eigenvalues_ref(rot);
    REQUIRE(er.size() == 2);
    CHECK(std::abs(std::abs(er[0].imag()) - 1.0) <= 1e-12);
}

TEST_CASE("results are stable under precision doubling") {
    std::mt19937_64 rng(43);
    Matrix a = randn_mat(5, 5, rng, 3.0);
    Matrix b = randn_mat(5, 5, rng, 3.0);
    Matrix e = randn_mat(5, 5, rng);
    Matrix lo, hi;
    {
        oracle::PrecisionGuard guard(100);
        lo = oracle::Lexp_ref(a, b, e, 100).to_double();
    }
    {
        oracle::PrecisionGuard guard(200);
        hi = oracle::Lexp_ref(a, b, e, 200).to_double();
    }
    CHECK(lo.bit_equal(hi));
}

TEST_CASE("series helpers invert and take logarithms consistently") {
    oracle::PrecisionGuard guard(60);
    // a(z) = 1 + z: inverse is the alternating geometric series
    oracle::Series a{BigFloat(1), BigFloat(1)};
    oracle::Series inv = oracle::series_inverse(a, 6);
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(big_to_double(inv[k]) == (k % 2 == 0 ? 1.0 : -1.0));
    // log(1 + z) = z - z^2/2 + z^3/3 - ...
    oracle::Series w{BigFloat(0), BigFloat(1)};
    oracle::Series lg = oracle::series_log1p(w, 5);
    CHECK(big_to_double(lg[1]) == 1.0);
    CHECK(big_to_double(lg[2]) == -0.5);
    CHECK(big_to_double(lg[3]) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // product round-trip
    oracle::Series prod = oracle::series_mul(a, inv, 6);
    CHECK(big_to_double(prod[0]) == 1.0);
    for (std::size_t k = 1; k < 6; ++k) CHECK(big_to_double(prod[k]) == 0.0);
}
