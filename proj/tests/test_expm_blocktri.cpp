#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "expmbt/expm_blocktri.hpp"
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

TEST_CASE("builtin thresholds regenerate and are ordered") {
    const EllTable& t = EllTable::builtin();
    for (std::size_t k = 0; k < t.degrees.size(); ++k) {
        auto [ell, theta] = derive_ell_theta(t.degrees[k]);
        CHECK(t.ell[k] == doctest::Approx(ell).epsilon(1e-12));
        CHECK(t.theta[k] == doctest::Approx(theta).epsilon(1e-12));
        CHECK(t.ell[k] < t.theta[k]);
        if (k > 0) CHECK(t.ell[k] > t.ell[k - 1]);
    }
    CHECK(t.ell[4] > 4.64);
    CHECK(t.ell[4] < 4.84);
}

TEST_CASE("degree and scaling selection") {
    auto [m0, s0] = select_params(0.0, 0.0);
    CHECK(m0 == 3);
    CHECK(s0 == 0);

    auto [m1, s1] = select_params(4.74, 0.1);
    CHECK(m1 == 13);
    CHECK(s1 == 0);

    auto [m2, s2] = select_params(4.85e3, 1.0);
    CHECK(m2 == 13);
    CHECK(s2 == 10);

    // larger of the two norms drives the choice
    auto [m3, s3] = select_params(0.1, 4.85e3);
    CHECK(m3 == 13);
    CHECK(s3 == 10);

    // any positive scaling forces the top degree
    const EllTable& t = EllTable::builtin();
    for (double eta : {5.0, 50.0, 1e4, 1e8}) {
        auto [m, s] = select_params(eta, 0.0);
        CHECK(m == 13);
        CHECK(s >= 1);
        CHECK(std::ldexp(eta, -s) <= t.ell[4]);
        CHECK(std::ldexp(eta, -(s - 1)) > t.ell[4]);
    }
}

TEST_CASE("squaring with s = 0 leaves inputs untouched") {
    std::mt19937_64 rng(21);
    Matrix x = randn_mat(3, 3, rng);
    Matrix y = randn_mat(3, 3, rng);
    Matrix d = randn_mat(3, 3, rng);
    Matrix x0 = x, y0 = y, d0 = d;
    squaring_phase(x, y, d, 0);
    CHECK(x.bit_equal(x0));
    CHECK(y.bit_equal(y0));
    CHECK(d.bit_equal(d0));
}

TEST_CASE("scalar squaring recurrence") {
    Matrix x = scalar(2.0), y = scalar(2.0), d = scalar(1.0);
    squaring_phase(x, y, d, 2);
    // step 1: d = 2*1 + 1*2 = 4, x = y = 4; step 2: d = 4*4 + 4*4 = 32, x = y = 16
    CHECK(d.real_at(0, 0) == 32.0);
    CHECK(x.real_at(0, 0) == 16.0);
    CHECK(y.real_at(0, 0) == 16.0);
}

TEST_CASE("zero data gives the identity and a zero block") {
    Matrix a(3, 3), b(2, 2), e(3, 2);
    ExpmResult r = expm_block_tri(a, b, e);
    CHECK(r.x.bit_equal(Matrix::identity(3)));
    CHECK(r.y.bit_equal(Matrix::identity(2)));
    CHECK(r.d.norm_inf() == 0.0);
    CHECK(r.m == 3);
    CHECK(r.s == 0);
}

TEST_CASE("scalar coupling is a hyperbolic sine") {
    ExpmResult r = expm_block_tri(scalar(1.0), scalar(-1.0), scalar(2.0));
    CHECK(r.d.real_at(0, 0) == doctest::Approx(2 * std::sinh(1.0)).epsilon(1e-15));
    CHECK(r.x.real_at(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(r.y.real_at(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("oracle agreement across norm scales") {
    std::mt19937_64 rng(22);
    for (double scale : {0.01, 1.0, 10.0, 100.0}) {
        Matrix a = randn_mat(8, 8, rng, scale);
        Matrix b = randn_mat(6, 6, rng, scale);
        Matrix e = randn_mat(8, 6, rng);
        ExpmResult r = expm_block_tri(a, b, e);
        CHECK(oracle::rel_error_inf(r.x, oracle::expm_ref(a)) <= 1e-13);
        CHECK(oracle::rel_error_inf(r.y, oracle::expm_ref(b)) <= 1e-13);
        CHECK(oracle::rel_error_inf(r.d, oracle::Lexp_ref(a, b, e)) <= 1e-13);
    }
}

TEST_CASE("multiplication budget is 25 plus 4 per squaring") {
    std::mt19937_64 rng(23);
    const EllTable& t = EllTable::builtin();
    for (int s : {1, 2, 3}) {
        double target = 0.9 * t.ell[4] * std::ldexp(1.0, s);
        Matrix a = randn_mat(6, 6, rng);
        a *= target / a.norm_inf();
        Matrix b = randn_mat(6, 6, rng, 0.1);
        Matrix e = randn_mat(6, 6, rng);
        ExpmResult r = expm_block_tri(a, b, e);
        CHECK(r.m == 13);
        CHECK(r.s == s);
        CHECK(r.matmuls == 25 + 4 * s);
        CHECK(!r.used_schur);
    }
}

TEST_CASE("the coupling block is linear in E") {
    std::mt19937_64 rng(24);
    Matrix a = randn_mat(5, 5, rng, 2.0);
    Matrix b = randn_mat(5, 5, rng, 2.0);
    Matrix e1 = randn_mat(5, 5, rng);
    Matrix e2 = randn_mat(5, 5, rng);
    Matrix d1 = expm_block_tri(a, b, e1).d;
    Matrix d2 = expm_block_tri(a, b, e2).d;
    Matrix d12 = expm_block_tri(a, b, e1 + e2).d;
    CHECK((d12 - d1 - d2).norm_inf() <= 1e3 * kU * (d1.norm_inf() + d2.norm_inf()));
}

TEST_CASE("forcing Schur preserves accuracy") {
    std::mt19937_64 rng(25);
    Matrix a = randn_mat(7, 7, rng, 3.0);
    Matrix b = randn_mat(5, 5, rng, 3.0);
    Matrix e = randn_mat(7, 5, rng);
    ExpmOptions opts;
    opts.schur = SchurMode::Always;
    ExpmResult r = expm_block_tri(a, b, e, opts);
    CHECK(r.used_schur);
    CHECK(oracle::rel_error_inf(r.x, oracle::expm_ref(a)) <= 1e-13);
    CHECK(oracle::rel_error_inf(r.d, oracle::Lexp_ref(a, b, e)) <= 1e-13);
}

TEST_CASE("Schur reduction engages automatically at large norms") {
    std::mt19937_64 rng(26);
    Matrix a = randn_mat(6, 6, rng);
    a *= 1e4 / a.norm_inf();
    Matrix b = randn_mat(4, 4, rng, 0.5);
    Matrix e = randn_mat(6, 4, rng);
    ExpmResult r = expm_block_tri(a, b, e);
    CHECK(r.s >= 10);
    CHECK(r.used_schur);
    CHECK(oracle::rel_error_inf(r.x, oracle::expm_ref(a, 200)) <= 1e-12);
}

TEST_CASE("similarity transform of the plain exponential") {
    std::mt19937_64 rng(27);
    Matrix a = randn_mat(6, 6, rng);
    Matrix p = Matrix::identity(6) + randn_mat(6, 6, rng, 0.1);
    Matrix pa = lu_solve(p, matmul(a, p), SolveSide::Left); // P^{-1} A P
    Matrix lhs = expm(pa);
    Matrix rhs = lu_solve(p, matmul(expm(a), p), SolveSide::Left);
    CHECK((lhs - rhs).norm_inf() <= 1e4 * kU * lhs.norm_inf());
}

TEST_CASE("rectangular coupling blocks are supported") {
    std::mt19937_64 rng(28);
    Matrix a = randn_mat(7, 7, rng);
    Matrix b = randn_mat(2, 2, rng);
    Matrix e = randn_mat(7, 2, rng);
    ExpmResult r = expm_block_tri(a, b, e);
    CHECK(r.d.rows() == 7);
    CHECK(r.d.cols() == 2);
    CHECK(oracle::rel_error_inf(r.d, oracle::Lexp_ref(a, b, e)) <= 1e-13);
}

TEST_CASE("dimension mismatches are rejected") {
    Matrix a(3, 3), b(2, 2), e(3, 3);
    CHECK_THROWS_AS(expm_block_tri(a, b, e), DimensionError);
    Matrix ns(3, 2);
    CHECK_THROWS_AS(expm_block_tri(ns, b, Matrix(3, 2)), DimensionError);
}
