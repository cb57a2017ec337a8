#include "expmbt/generators.hpp"

#include <cmath>
#include <random>

#include "expmbt/densela.hpp"

namespace expmbt {

Matrix gen_randn(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) m.real_at(i, j) = nd(rng);
    return m;
}

Matrix gen_stable_tri(Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i <= j; ++i) m.real_at(i, j) = nd(rng);
    for (Index i = 0; i < n; ++i)
        m.real_at(i, i) = -std::abs(m.real_at(i, i)) - 0.1;
    return m;
}

Matrix gen_symm(Index n, std::uint64_t seed) {
    Matrix c = gen_randn(n, seed);
    Matrix s = c + c.transpose();
    s *= 0.5;
    // force bitwise symmetry (x + y may differ from y + x only in NaN cases,
    // but mirroring the strict lower triangle removes any doubt)
    for (Index j = 0; j < n; ++j)
        for (Index i = j + 1; i < n; ++i) s.real_at(i, j) = s.real_at(j, i);
    return s;
}

Matrix gen_chebspec(Index n) {
    if (n < 1) throw DimensionError("chebspec needs n >= 1");
    const Index N = n;  // n + 1 extreme points x_k = cos(k pi / N), k = 0..N
    std::vector<double> x(static_cast<std::size_t>(N) + 1);
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 1.0);
    const double pi = 3.14159265358979323846;
    for (Index k = 0; k <= N; ++k)
        x[static_cast<std::size_t>(k)] =
            std::cos(static_cast<double>(k) * pi / static_cast<double>(N));
    c[0] = 2.0;
    c[static_cast<std::size_t>(N)] = 2.0;
    auto d_entry = [&](Index k, Index j) {
        if (k != j)
            return (c[static_cast<std::size_t>(k)] / c[static_cast<std::size_t>(j)]) *
                   (((k + j) % 2 == 0) ? 1.0 : -1.0) /
                   (x[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(j)]);
        if (k == 0) return (2.0 * N * N + 1.0) / 6.0;
        if (k == N) return -(2.0 * N * N + 1.0) / 6.0;
        const double xk = x[static_cast<std::size_t>(k)];
        return -xk / (2.0 * (1.0 - xk * xk));
    };
    // delete the row and column of the node x = 1 (k = 0)
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) m.real_at(i, j) = d_entry(i + 1, j + 1);
    return m;
}

std::pair<Matrix, Matrix> gen_hamiltonian_pair(Index n, std::uint64_t seed) {
    SchurForm sf = schur_decompose(gen_randn(n, seed));
    Matrix t = sf.T;
    for (Index i = 0; i < n; ++i)
        if (t.real_at(i, i) > 0.0) t.real_at(i, i) = -t.real_at(i, i);
    Matrix c = gen_chebspec(n);
    Matrix h = c + c.transpose();
    h *= 0.5;
    for (Index j = 0; j < n; ++j)
        for (Index i = j + 1; i < n; ++i) h.real_at(i, j) = h.real_at(j, i);
    return {std::move(t), std::move(h)};
}

Matrix gen_testmat(const std::string& kind, Index n, std::uint64_t seed) {
    if (kind == "randn") return gen_randn(n, seed);
    if (kind == "stable-tri") return gen_stable_tri(n, seed);
    if (kind == "symm") return gen_symm(n, seed);
    if (kind == "chebspec") return gen_chebspec(n);
    throw Error("unknown generator kind '" + kind + "'");
}

} // namespace expmbt
