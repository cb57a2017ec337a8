#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "expmbt/matrix.hpp"

namespace expmbt {

struct BenchRecord {
    int problem = 0;
    std::string method;       // alg41 | kl | block
    double rel_error = 0.0;   // inf-norm, against the oracle
    double seconds = 0.0;
    long matmuls = 0;
    int m = 0;
    int s = 0;
    bool failed = false;
    std::string message;
};

struct BenchOptions {
    int count = 40;
    Index na = 10;
    Index nb = 8;
    std::uint64_t seed = 1;
    std::vector<std::string> methods = {"alg41", "kl", "block"};
    unsigned oracle_digits = 100;
};

/// Runs every requested method on seeded random triples with varied norm
/// scales. A method crash becomes a failure record; the run continues.
std::vector<BenchRecord> run_bench(const BenchOptions& opts);

/// Log-spaced sample points for the performance profile, alpha in [1, 64].
std::vector<double> profile_alphas();

/// For each method, p(alpha) = fraction of problems whose error is within a
/// factor alpha of the best error on that problem. Failed records count as
/// never within any factor.
std::map<std::string, std::vector<double>> performance_profile(
    const std::vector<BenchRecord>& records, const std::vector<double>& alphas);

/// CSV with a stable column set; timings go to their own column so that the
/// remaining bytes are deterministic for a fixed seed.
void write_bench_csv(const std::string& path,
                     const std::vector<BenchRecord>& records);

void write_profile(const std::string& path,
                   const std::map<std::string, std::vector<double>>& profile,
                   const std::vector<double>& alphas);

struct AlphaSweepRow {
    int t_k = 0;              // exponent: the coupling block is scaled by 2^t_k
    double err_alg41 = 0.0;
    double err_kl = 0.0;
    double err_block = 0.0;
};

/// The seven-row relative-error table for the Hamiltonian pair (T, H) with
/// coupling 2^{200(k-3)} H, k = 0..6, comparing the main algorithm, the
/// Kenney-Laub baseline, and plain scaling-and-squaring on the embedded
/// block matrix.
std::vector<AlphaSweepRow> alpha_sweep(Index n, std::uint64_t seed,
                                       unsigned oracle_digits = 100);

void write_alpha_sweep(const std::string& path,
                       const std::vector<AlphaSweepRow>& rows);

} // namespace expmbt
