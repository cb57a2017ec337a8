#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "expmbt/bench.hpp"

using namespace expmbt;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("expmbt_bench_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directory(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string strip_seconds_column(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.rfind(',');
        out << line.substr(0, pos) << "\n";
    }
    return out.str();
}

BenchOptions small_opts() {
    BenchOptions o;
    o.count = 6;
    o.na = 5;
    o.nb = 4;
    o.seed = 3;
    o.oracle_digits = 60;
    return o;
}

} // namespace

TEST_CASE("every requested method produces one record per problem") {
    BenchOptions o = small_opts();
    auto records = run_bench(o);
    CHECK(records.size() ==
          static_cast<std::size_t>(o.count) * o.methods.size());
    int ok = 0;
    for (const BenchRecord& r : records) {
        CHECK(r.problem >= 0);
        CHECK(r.problem < o.count);
        if (!r.failed) {
            CHECK(r.rel_error >= 0.0);
            ++ok;
        }
    }
    CHECK(ok > 0);
}

TEST_CASE("profile of a single method is identically one") {
    BenchOptions o = small_opts();
    o.methods = {"alg41"};
    auto records = run_bench(o);
    auto alphas = profile_alphas();
    auto prof = performance_profile(records, alphas);
    REQUIRE(prof.count("alg41") == 1);
    for (double p : prof["alg41"]) CHECK(p == 1.0);
}

TEST_CASE("profile sample points span [1, 64] and profiles are monotone") {
    auto alphas = profile_alphas();
    REQUIRE(alphas.size() == 25);
    CHECK(alphas.front() == 1.0);
    CHECK(alphas.back() == doctest::Approx(64.0).epsilon(1e-12));
    for (std::size_t k = 1; k < alphas.size(); ++k)
        CHECK(alphas[k] > alphas[k - 1]);

    auto records = run_bench(small_opts());
    auto prof = performance_profile(records, alphas);
    double sum_at_one = 0.0;
    for (auto& [name, ps] : prof) {
        REQUIRE(ps.size() == alphas.size());
        for (std::size_t k = 1; k < ps.size(); ++k) CHECK(ps[k] >= ps[k - 1]);
        for (double p : ps) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
        sum_at_one += ps[0];
    }
    // at alpha = 1 at least one method attains the best error per problem
    CHECK(sum_at_one >= 1.0 - 1e-12);
}

TEST_CASE("benchmark CSV is deterministic apart from timings") {
    TempDir dir;
    BenchOptions o = small_opts();
    write_bench_csv(dir.file("one.csv"), run_bench(o));
    write_bench_csv(dir.file("two.csv"), run_bench(o));
    CHECK(strip_seconds_column(dir.file("one.csv")) ==
          strip_seconds_column(dir.file("two.csv")));

    std::ifstream in(dir.file("one.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header.substr(0, 7) == "problem");
    CHECK(header.substr(header.rfind(',') + 1) == "seconds");
}

TEST_CASE("alpha sweep table shape and method columns") {
    auto rows = alpha_sweep(6, 5, 80);
    REQUIRE(rows.size() == 7);
    for (std::size_t k = 0; k < rows.size(); ++k)
        CHECK(rows[k].t_k == 200 * (static_cast<int>(k) - 3));
    // the two coupled methods must not degrade as the coupling scale grows
    for (const AlphaSweepRow& r : rows) {
        CHECK(r.err_alg41 <= 1e-13);
        CHECK(r.err_kl <= 1e-11);
    }
    // bitwise scale invariance: every row reports the same error
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].err_alg41 == rows[0].err_alg41);
        CHECK(rows[k].err_kl == rows[0].err_kl);
    }
    // the embedded method loses accuracy at the extreme scales
    CHECK(rows.back().err_block > 1e3 * rows.back().err_alg41);
}

TEST_CASE("sweep writer emits one labelled row per scale") {
    TempDir dir;
    auto rows = alpha_sweep(4, 9, 60);
    std::string p = dir.file("sweep.csv");
    write_alpha_sweep(p, rows);
    std::ifstream in(p);
    std::string line;
    int data_rows = 0;
    std::getline(in, line); // header
    CHECK(line.find("alg41") != std::string::npos);
    while (std::getline(in, line))
        if (!line.empty()) ++data_rows;
    CHECK(data_rows == 7);
}
