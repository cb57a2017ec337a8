#include "expmbt/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "expmbt/expm_blocktri.hpp"
#include "expmbt/generators.hpp"
#include "expmbt/kenney_laub.hpp"
#include "expmbt/oracle.hpp"

namespace expmbt {

namespace {

Matrix embed_block(const Matrix& a, const Matrix& b, const Matrix& e) {
    const Index n = a.rows();
    const Index d = b.rows();
    Matrix g(n + d, n + d, a.kind());
    g.set_block(0, 0, a);
    g.set_block(0, n, e);
    g.set_block(n, n, b);
    return g;
}

/// The comparison method: plain scaling and squaring applied to the whole
/// (n+d) x (n+d) matrix, with the Schur rescue disabled so the method is the
/// generic dense exponential and nothing more.
Matrix block_embed_d(const Matrix& a, const Matrix& b, const Matrix& e) {
    ExpmOptions opts;
    opts.schur = SchurMode::Never;
    Matrix f = expm(embed_block(a, b, e), opts);
    return f.submatrix(0, a.rows(), a.rows(), b.rows());
}

struct Triple {
    Matrix a, b, e;
};

Triple bench_triple(Index na, Index nb, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ua(-1.0, 1.5);
    std::uniform_real_distribution<double> ue(0.0, 6.0);
    const double sa = std::pow(10.0, ua(rng));
    const double sb = std::pow(10.0, ua(rng));
    const double se = std::pow(10.0, ue(rng));
    Triple t;
    t.a = Matrix(na, na);
    t.b = Matrix(nb, nb);
    t.e = Matrix(na, nb);
    for (Index j = 0; j < na; ++j)
        for (Index i = 0; i < na; ++i) t.a.real_at(i, j) = nd(rng) * sa;
    for (Index j = 0; j < nb; ++j)
        for (Index i = 0; i < nb; ++i) t.b.real_at(i, j) = nd(rng) * sb;
    for (Index j = 0; j < nb; ++j)
        for (Index i = 0; i < na; ++i) t.e.real_at(i, j) = nd(rng) * se;
    return t;
}

} // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& opts) {
    std::vector<BenchRecord> records;
    for (int p = 0; p < opts.count; ++p) {
        Triple t = bench_triple(opts.na, opts.nb,
                                opts.seed + static_cast<std::uint64_t>(p) * 1000003u);
        oracle::BigMatrix dref = oracle::Lexp_ref(t.a, t.b, t.e, opts.oracle_digits);
        for (const std::string& method : opts.methods) {
            BenchRecord rec;
            rec.problem = p;
            rec.method = method;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                Matrix d;
                if (method == "alg41") {
                    ExpmResult r = expm_block_tri(t.a, t.b, t.e);
                    d = std::move(r.d);
                    rec.matmuls = r.matmuls;
                    rec.m = r.m;
                    rec.s = r.s;
                } else if (method == "kl") {
                    KLResult r = kl_frechet(t.a, t.b, t.e);
                    d = std::move(r.d);
                    rec.s = r.s;
                } else if (method == "block") {
                    d = block_embed_d(t.a, t.b, t.e);
                } else {
                    throw Error("unknown method '" + method + "'");
                }
                rec.rel_error = oracle::rel_error_inf(d, dref);
                if (!std::isfinite(rec.rel_error)) {
                    rec.failed = true;
                    rec.message = "non-finite error";
                }
            } catch (const std::exception& ex) {
                rec.failed = true;
                rec.message = ex.what();
            }
            rec.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<double> profile_alphas() {
    std::vector<double> alphas;
    for (int k = 0; k <= 24; ++k)  // 2^{k/4}, from 1 to 64
        alphas.push_back(std::pow(2.0, k / 4.0));
    return alphas;
}

std::map<std::string, std::vector<double>> performance_profile(
    const std::vector<BenchRecord>& records, const std::vector<double>& alphas) {
    std::map<int, double> best;
    std::map<std::string, int> counts;
    for (const BenchRecord& r : records) {
        ++counts[r.method];
        if (r.failed) continue;
        auto it = best.find(r.problem);
        if (it == best.end() || r.rel_error < it->second)
            best[r.problem] = r.rel_error;
    }
    std::map<std::string, std::vector<double>> prof;
    for (const auto& [method, n] : counts) {
        std::vector<double>& p = prof[method];
        p.assign(alphas.size(), 0.0);
        for (const BenchRecord& r : records) {
            if (r.method != method || r.failed) continue;
            const double b = best.at(r.problem);
            for (std::size_t k = 0; k < alphas.size(); ++k)
                if (r.rel_error <= alphas[k] * b || r.rel_error == b)
                    p[k] += 1.0;
        }
        for (double& v : p) v /= static_cast<double>(n);
    }
    return prof;
}

void write_bench_csv(const std::string& path,
                     const std::vector<BenchRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "problem,method,rel_error,matmuls,m,s,failed,message,seconds\n";
    char buf[64];
    for (const BenchRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%.17g", r.rel_error);
        out << r.problem << "," << r.method << "," << buf << "," << r.matmuls
            << "," << r.m << "," << r.s << "," << (r.failed ? 1 : 0) << ","
            << r.message << ",";
        std::snprintf(buf, sizeof buf, "%.6g", r.seconds);
        out << buf << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_profile(const std::string& path,
                   const std::map<std::string, std::vector<double>>& profile,
                   const std::vector<double>& alphas) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "alpha";
    for (const auto& [method, p] : profile) out << "," << method;
    out << "\n";
    char buf[64];
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.10g", alphas[k]);
        out << buf;
        for (const auto& [method, p] : profile) {
            std::snprintf(buf, sizeof buf, "%.10g", p[k]);
            out << "," << buf;
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<AlphaSweepRow> alpha_sweep(Index n, std::uint64_t seed,
                                       unsigned oracle_digits) {
    auto [t, h] = gen_hamiltonian_pair(n, seed);
    Matrix b = -t.transpose();

    // reference at coupling 1; scaling by 2^{t_k} is exact in both the
    // reference and the computed results, so one oracle evaluation suffices
    oracle::PrecisionGuard guard(oracle_digits + 20);
    oracle::BigMatrix dref1 = oracle::Lexp_ref(t, b, h, oracle_digits);

    std::vector<AlphaSweepRow> rows;
    for (int k = 0; k <= 6; ++k) {
        AlphaSweepRow row;
        row.t_k = 200 * (k - 3);
        const double alpha = std::ldexp(1.0, row.t_k);
        Matrix e = h * alpha;
        oracle::BigMatrix dref = dref1;
        dref *= pow(oracle::BigFloat(2), row.t_k);

        ExpmResult ra = expm_block_tri(t, b, e);
        row.err_alg41 = oracle::rel_error_inf(ra.d, dref);
        KLResult rk = kl_frechet(t, b, e);
        row.err_kl = oracle::rel_error_inf(rk.d, dref);
        Matrix db = block_embed_d(t, b, e);
        row.err_block = oracle::rel_error_inf(db, dref);
        rows.push_back(row);
    }
    return rows;
}

void write_alpha_sweep(const std::string& path,
                       const std::vector<AlphaSweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "t_k,alg41,kl,block\n";
    char buf[64];
    for (const AlphaSweepRow& r : rows) {
        out << r.t_k;
        for (double v : {r.err_alg41, r.err_kl, r.err_block}) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << "," << buf;
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace expmbt
