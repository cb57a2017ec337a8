#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "expmbt/oracle.hpp"
#include "expmbt/pade.hpp"

using namespace expmbt;

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

constexpr double kU = 0x1p-53;

} // namespace

TEST_CASE("degree-3 coefficients are exact") {
    PadeCoeffs c = pade_coeffs(3);
    REQUIRE(c.c.size() == 4);
    CHECK(c.c[0] == 1.0);
    CHECK(c.c[1] == 0.5);
    CHECK(c.c[2] == 0.1);
    CHECK(c.c[3] == 1.0 / 120.0);
}

TEST_CASE("degree-13 trailing coefficient") {
    PadeCoeffs c = pade_coeffs(13);
    REQUIRE(c.c.size() == 14);
    CHECK(c.c[13] == 1.0 / 64764752532480000.0);
}

TEST_CASE("coefficients match exact rational generation") {
    for (int m : {3, 5, 7, 9, 13}) {
        PadeCoeffs c = pade_coeffs(m);
        oracle::PrecisionGuard guard(60);
        auto exact = oracle::pade_exp_coeffs_exact(m);
        REQUIRE(c.c.size() == exact.size());
        for (std::size_t k = 0; k < exact.size(); ++k) {
            // promote numerator and denominator separately: direct rational
            // construction loses precision on this Boost version
            oracle::BigFloat num(numerator(exact[k]));
            oracle::BigFloat den(denominator(exact[k]));
            double ref = static_cast<double>(num / den);
            CHECK(c.c[k] == ref);
        }
    }
}

TEST_CASE("unsupported degrees rejected") {
    CHECK(!is_supported_degree(4));
    CHECK(!is_supported_degree(11));
    CHECK(is_supported_degree(13));
    CHECK_THROWS_AS(pade_coeffs(4), Error);
}

TEST_CASE("scalar numerator split at z = 1, m = 3") {
    Matrix z = scalar(1.0);
    EvenPowers p = even_powers(z, 3);
    UVParts uv = eval_uv(z, 3, p);
    // u_3(1) = c1 + c3 = 61/120, v_3(1) = c0 + c2 = 11/10
    CHECK(uv.u.real_at(0, 0) == doctest::Approx(61.0 / 120.0).epsilon(1e-15));
    CHECK(uv.v.real_at(0, 0) == doctest::Approx(11.0 / 10.0).epsilon(1e-15));
    // r_3(1) = (v+u)/(v-u) = 193/71
    double r = (uv.v.real_at(0, 0) + uv.u.real_at(0, 0)) /
               (uv.v.real_at(0, 0) - uv.u.real_at(0, 0));
    CHECK(r == doctest::Approx(193.0 / 71.0).epsilon(1e-15));
    CHECK(r == doctest::Approx(2.7183098591549295).epsilon(1e-14));
}

TEST_CASE("even powers and multiplication counts") {
    std::mt19937_64 rng(11);
    Matrix m = randn_mat(4, 4, rng, 0.1);
    MatmulCounter c3;
    even_powers(m, 3, &c3);
    CHECK(c3.count == 1); // P2 only
    MatmulCounter c5;
    even_powers(m, 5, &c5);
    CHECK(c5.count == 2); // P2, P4
    MatmulCounter c13;
    even_powers(m, 13, &c13);
    CHECK(c13.count == 3); // P2, P4, P6
}

TEST_CASE("scalar M-sequence examples") {
    // a = 2, b = 1, e = 1: M2 = a*e + e*b = 3
    MSequence ms = m_sequence(scalar(2.0), scalar(1.0), scalar(1.0), false);
    CHECK(ms.m2.real_at(0, 0) == 3.0);
    // M4 = a^2 M2 + M2 b^2 = 4*3 + 3*1 = 15
    CHECK(ms.m4.real_at(0, 0) == 15.0);

    // a = 1, b = 0, e = 1: every block collapses to 1
    MSequence mt = m_sequence(scalar(1.0), scalar(0.0), scalar(1.0), true);
    CHECK(mt.m2.real_at(0, 0) == 1.0);
    CHECK(mt.m4.real_at(0, 0) == 1.0);
    CHECK(mt.m6.real_at(0, 0) == 1.0);
}

TEST_CASE("operator split at a = b = 0, e = 1, m = 3") {
    Matrix a = scalar(0.0), b = scalar(0.0), e = scalar(1.0);
    EvenPowers pa = even_powers(a, 3);
    EvenPowers pb = even_powers(b, 3);
    UVParts uvb = eval_uv(b, 3, pb);
    MSequence ms = m_sequence(a, b, e, 3, pa, pb);
    LParts lp = eval_L_uv(a, b, e, 3, pa, uvb, ms);
    // Only the linear numerator term survives: D_u = c1 * e = 1/2, D_v = 0.
    CHECK(lp.du.real_at(0, 0) == 0.5);
    CHECK(lp.dv.real_at(0, 0) == 0.0);
}

TEST_CASE("rational solve reproduces the oracle on small norms") {
    std::mt19937_64 rng(12);
    for (int m : {3, 5, 7, 9, 13}) {
        // stay well inside the accuracy region of the lowest degree
        Matrix a = randn_mat(5, 5, rng);
        a *= 0.008 / a.norm_inf();
        Matrix b = randn_mat(3, 3, rng);
        b *= 0.008 / b.norm_inf();
        Matrix e = randn_mat(5, 3, rng);
        SchemeOutput so = eval_scheme(a, b, e, m);
        RationalSolveResult r = rational_solve(so);
        CHECK(oracle::rel_error_inf(r.x, oracle::expm_ref(a)) <= 100 * kU);
        CHECK(oracle::rel_error_inf(r.y, oracle::expm_ref(b)) <= 100 * kU);
        CHECK(oracle::rel_error_inf(r.d, oracle::Lexp_ref(a, b, e)) <= 100 * kU);
    }
}

TEST_CASE("left and right solves agree") {
    std::mt19937_64 rng(13);
    Matrix a = randn_mat(6, 6, rng, 0.1);
    Matrix b = randn_mat(4, 4, rng, 0.1);
    Matrix e = randn_mat(6, 4, rng);
    SchemeOutput so = eval_scheme(a, b, e, 9);
    Matrix dl = rational_solve(so, SideHint::Left).d;
    Matrix dr = rational_solve(so, SideHint::Right).d;
    CHECK((dl - dr).norm_inf() <= 100 * kU * dl.norm_inf());
}

TEST_CASE("transpose symmetry of the coupling block") {
    std::mt19937_64 rng(14);
    Matrix a = randn_mat(5, 5, rng, 0.2);
    Matrix b = randn_mat(5, 5, rng, 0.2);
    Matrix e = randn_mat(5, 5, rng);
    SchemeOutput so = eval_scheme(a, b, e, 13);
    Matrix d1 = rational_solve(so).d;
    Matrix at = b.conj_transpose();
    Matrix bt = a.conj_transpose();
    Matrix et = e.conj_transpose();
    SchemeOutput st = eval_scheme(at, bt, et, 13);
    Matrix d2 = rational_solve(st).d.conj_transpose();
    CHECK((d1 - d2).norm_inf() <= 100 * kU * d1.norm_inf());
}

TEST_CASE("coupling block degenerates to a divided difference for scalars") {
    // For 1x1 blocks the coupling block is (e^a - e^b)/(a - b) * e.
    Matrix a = scalar(0.3), b = scalar(-0.2), e = scalar(1.0);
    SchemeOutput so = eval_scheme(a, b, e, 13);
    double d = rational_solve(so).d.real_at(0, 0);
    double ref = (std::exp(0.3) - std::exp(-0.2)) / 0.5;
    CHECK(d == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("matmul budget of the full degree-13 scheme") {
    std::mt19937_64 rng(15);
    Matrix a = randn_mat(6, 6, rng, 0.1);
    Matrix b = randn_mat(6, 6, rng, 0.1);
    Matrix e = randn_mat(6, 6, rng);
    MatmulCounter c;
    SchemeOutput so = eval_scheme(a, b, e, 13, &c);
    rational_solve(so, SideHint::Auto, &c);
    CHECK(c.count == 25);
}
