#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "expmbt/kenney_laub.hpp"
#include "expmbt/oracle.hpp"

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

TEST_CASE("tau approximant roots come in conjugate quadruples") {
    const TauPade& tp = tau_pade8();
    for (const Complex& a : tp.alpha) {
        bool found = false;
        for (const Complex& a2 : tp.alpha)
            if (std::abs(a2 - std::conj(a)) <= 1e-14 * std::abs(a)) found = true;
        CHECK(found);
    }
    // tanh(z)/z has no real poles or zeros near the origin
    for (const Complex& b : tp.beta) CHECK(std::abs(b.imag()) > 0.1);
}

TEST_CASE("tau approximant error on the quarter-circle") {
    oracle::BigFloat err = oracle::tau_pade8_error_at_iz(0.25);
    double e = static_cast<double>(err);
    CHECK(e >= 6.85e-29);
    CHECK(e <= 6.85e-27);
}

TEST_CASE("tau series head") {
    // tanh(z)/z = 1 - z^2/3 + 2 z^4/15 - ...; the [8/8] approximant matches
    // through order 16, so small-z evaluation must reproduce the head.
    const TauPade& tp = tau_pade8();
    for (double z : {1e-2, 5e-2, 0.1}) {
        double num = 1.0, den = 1.0;
        for (int j = 0; j < 8; ++j) {
            num *= std::abs(1.0 - z / tp.alpha[static_cast<std::size_t>(j)]);
            den *= std::abs(1.0 - z / tp.beta[static_cast<std::size_t>(j)]);
        }
        double r8 = num / den;
        double head = 1.0 - z * z / 3.0 + 2.0 * std::pow(z, 4) / 15.0 -
                      17.0 * std::pow(z, 6) / 315.0;
        // the head itself is truncated at order 6, so allow its z^8 tail
        CHECK(r8 == doctest::Approx(head).epsilon(std::pow(z, 8) + 1e-13));
    }
}

TEST_CASE("cascade with zero blocks is the identity map") {
    std::mt19937_64 rng(31);
    Matrix e = randn_mat(4, 3, rng);
    Matrix r = sylvester_cascade(Matrix(4, 4), Matrix(3, 3), e, tau_pade8());
    CHECK((r - e).norm_inf() <= 100 * kU * e.norm_inf());
}

TEST_CASE("scalar coupling values") {
    KLResult r1 = kl_frechet(scalar(0.2), scalar(-0.2), scalar(1.0));
    CHECK(r1.d.real_at(0, 0) ==
          doctest::Approx(std::sinh(0.2) / 0.2).epsilon(1e-14));

    KLResult r2 = kl_frechet(scalar(1.0), scalar(-1.0), scalar(1.0));
    CHECK(r2.d.real_at(0, 0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(r2.s == 2); // halve twice to bring the norm to 1/4
}

TEST_CASE("matches the oracle on random pairs") {
    std::mt19937_64 rng(32);
    for (double scale : {0.1, 1.0, 5.0}) {
        Matrix a = randn_mat(6, 6, rng, scale);
        Matrix b = randn_mat(4, 4, rng, scale);
        Matrix e = randn_mat(6, 4, rng);
        KLResult r = kl_frechet(a, b, e);
        CHECK(oracle::rel_error_inf(r.d, oracle::Lexp_ref(a, b, e)) <= 1e-12);
    }
}

TEST_CASE("linearity in the coupling data") {
    std::mt19937_64 rng(33);
    Matrix a = randn_mat(5, 5, rng);
    Matrix b = randn_mat(5, 5, rng);
    Matrix e = randn_mat(5, 5, rng);
    Matrix d1 = kl_frechet(a, b, e).d;
    Matrix d2 = kl_frechet(a, b, 2.0 * e).d;
    CHECK((d2 - 2.0 * d1).norm_inf() <= 1e3 * kU * d1.norm_inf());
}

TEST_CASE("no scaling needed for tiny norms") {
    std::mt19937_64 rng(34);
    Matrix a = randn_mat(4, 4, rng, 0.01);
    Matrix b = randn_mat(4, 4, rng, 0.01);
    Matrix e = randn_mat(4, 4, rng);
    KLResult r = kl_frechet(a, b, e);
    CHECK(r.s == 0);
    CHECK(oracle::rel_error_inf(r.d, oracle::Lexp_ref(a, b, e)) <= 1e-13);
}

TEST_CASE("real inputs give a small dropped imaginary part") {
    std::mt19937_64 rng(35);
    Matrix a = randn_mat(5, 5, rng);
    Matrix b = randn_mat(5, 5, rng);
    Matrix e = randn_mat(5, 5, rng);
    KLResult r = kl_frechet(a, b, e);
    CHECK(r.d.is_real());
    CHECK(r.imag_residue <= 1e-10 * r.d.norm_inf());
}

TEST_CASE("level diagnostics are recorded") {
    std::mt19937_64 rng(36);
    Matrix a = randn_mat(5, 5, rng, 2.0);
    Matrix b = randn_mat(5, 5, rng, 2.0);
    Matrix e = randn_mat(5, 5, rng);
    KLResult r = kl_frechet(a, b, e);
    CHECK(r.s >= 1);
    CHECK(!r.levels.empty());
    for (const KLLevel& lv : r.levels) {
        CHECK(lv.norm_x > 0.0);
        CHECK(lv.norm_y > 0.0);
    }
}

TEST_CASE("works without the initial Schur reduction") {
    std::mt19937_64 rng(37);
    Matrix a = randn_mat(5, 5, rng);
    Matrix b = randn_mat(5, 5, rng);
    Matrix e = randn_mat(5, 5, rng);
    KLOptions opts;
    opts.initial_schur = false;
    KLResult r = kl_frechet(a, b, e, opts);
    CHECK(oracle::rel_error_inf(r.d, oracle::Lexp_ref(a, b, e)) <= 1e-11);
}
