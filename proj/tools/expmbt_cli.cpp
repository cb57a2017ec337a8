#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "expmbt/acceptance.hpp"
#include "expmbt/bench.hpp"
#include "expmbt/expm_blocktri.hpp"
#include "expmbt/generators.hpp"
#include "expmbt/io.hpp"
#include "expmbt/kenney_laub.hpp"
#include "expmbt/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct ComputeArgs {
    std::string a_path, b_path, e_path;
    std::string method = "alg41";
    std::string out = "out";
    std::string force_schur = "auto";
    unsigned digits = 100;
};

expmbt::Matrix block_embed_full(const expmbt::Matrix& a, const expmbt::Matrix& b,
                                const expmbt::Matrix& e) {
    using namespace expmbt;
    const Index n = a.rows();
    const Index d = b.rows();
    Matrix g(n + d, n + d);
    g.set_block(0, 0, a);
    g.set_block(0, n, e);
    g.set_block(n, n, b);
    return g;
}

int run_compute(const ComputeArgs& args) {
    using namespace expmbt;
    Matrix a = read_matrix(args.a_path);
    Matrix b = read_matrix(args.b_path);
    Matrix e = read_matrix(args.e_path);

    ExpmOptions opts;
    if (args.force_schur == "always")
        opts.schur = SchurMode::Always;
    else if (args.force_schur == "never")
        opts.schur = SchurMode::Never;

    Matrix x, y, d;
    int m = 0, s = 0;
    long matmuls = 0;
    const auto t0 = std::chrono::steady_clock::now();
    if (args.method == "alg41") {
        ExpmResult r = expm_block_tri(a, b, e, opts);
        if (r.overflowed)
            throw Error("result overflowed double precision");
        x = std::move(r.x);
        y = std::move(r.y);
        d = std::move(r.d);
        m = r.m;
        s = r.s;
        matmuls = r.matmuls;
    } else if (args.method == "kl") {
        KLResult r = kl_frechet(a, b, e);
        x = expm(a, opts);
        y = expm(b, opts);
        d = std::move(r.d);
        s = r.s;
    } else if (args.method == "block") {
        ExpmOptions plain;
        plain.schur = SchurMode::Never;
        Matrix f = expm(block_embed_full(a, b, e), plain);
        x = f.submatrix(0, 0, a.rows(), a.rows());
        d = f.submatrix(0, a.rows(), a.rows(), b.rows());
        y = f.submatrix(a.rows(), a.rows(), b.rows(), b.rows());
    } else if (args.method == "oracle") {
        x = oracle::expm_ref(a, args.digits).to_double();
        y = oracle::expm_ref(b, args.digits).to_double();
        d = oracle::Lexp_ref(a, b, e, args.digits).to_double();
    } else {
        throw Error("unknown method '" + args.method + "'");
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    write_matrix(args.out + ".X.mtx", x);
    write_matrix(args.out + ".Y.mtx", y);
    write_matrix(args.out + ".D.mtx", d);
    std::ofstream diag(args.out + ".diag");
    if (!diag) throw IoError("cannot open '" + args.out + ".diag' for writing");
    diag << "method=" << args.method << "\n";
    diag << "m=" << m << "\n";
    diag << "s=" << s << "\n";
    diag << "matmuls=" << matmuls << "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", secs);
    diag << "seconds=" << buf << "\n";
    std::cout << "wrote " << args.out << ".{X,Y,D}.mtx and " << args.out
              << ".diag\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous block-triangular matrix exponentials"};
    app.require_subcommand(1);

    ComputeArgs cargs;
    CLI::App* compute = app.add_subcommand(
        "compute", "Compute e^A, e^B and the coupling block of exp([[A,E],[0,B]])");
    compute->add_option("--A", cargs.a_path, "file with A")->required();
    compute->add_option("--B", cargs.b_path, "file with B")->required();
    compute->add_option("--E", cargs.e_path, "file with E")->required();
    compute->add_option("--method", cargs.method, "alg41|kl|block|oracle")
        ->check(CLI::IsMember({"alg41", "kl", "block", "oracle"}));
    compute->add_option("--out", cargs.out, "output file prefix");
    compute->add_option("--force-schur", cargs.force_schur, "auto|always|never")
        ->check(CLI::IsMember({"auto", "always", "never"}));
    compute->add_option("--digits", cargs.digits, "oracle precision digits");

    expmbt::BenchOptions bopts;
    std::string bench_out = "bench";
    std::string methods_csv = "alg41,kl,block";
    CLI::App* bench = app.add_subcommand("bench", "Seeded random-triple benchmark");
    bench->add_option("--count", bopts.count, "number of problems");
    bench->add_option("--nA", bopts.na, "dimension of A");
    bench->add_option("--nB", bopts.nb, "dimension of B");
    bench->add_option("--seed", bopts.seed, "base seed");
    bench->add_option("--methods", methods_csv, "comma-separated method list");
    bench->add_option("--oracle-digits", bopts.oracle_digits, "oracle digits");
    bench->add_option("--out", bench_out, "output file prefix");

    expmbt::Index sweep_n = 8;
    std::uint64_t sweep_seed = 42;
    std::string sweep_out = "alpha_sweep.csv";
    CLI::App* sweep = app.add_subcommand(
        "alpha-sweep", "Relative-error table across coupling scales 2^{200(k-3)}");
    sweep->add_option("--n", sweep_n, "block dimension");
    sweep->add_option("--seed", sweep_seed, "generator seed");
    sweep->add_option("--out", sweep_out, "output table file");

    std::string gen_kind = "randn";
    expmbt::Index gen_n = 8;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "matrix.mtx";
    CLI::App* gen = app.add_subcommand("gen", "Write a test matrix");
    gen->add_option("--kind", gen_kind,
                    "stable-tri|symm|randn|chebspec|hamiltonian-pair")
        ->check(CLI::IsMember(
            {"stable-tri", "symm", "randn", "chebspec", "hamiltonian-pair"}));
    gen->add_option("--n", gen_n, "dimension");
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out", gen_out, "output file (pair: prefix)");

    CLI::App* derive = app.add_subcommand(
        "derive-constants", "Recompute the backward-error thresholds");

    CLI::App* validate =
        app.add_subcommand("validate", "Run the release acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (compute->parsed()) return run_compute(cargs);
        if (bench->parsed()) {
            bopts.methods.clear();
            std::stringstream ss(methods_csv);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) bopts.methods.push_back(tok);
            auto records = expmbt::run_bench(bopts);
            expmbt::write_bench_csv(bench_out + ".csv", records);
            auto alphas = expmbt::profile_alphas();
            expmbt::write_profile(bench_out + ".profile.csv",
                                  expmbt::performance_profile(records, alphas),
                                  alphas);
            std::cout << "wrote " << bench_out << ".csv and " << bench_out
                      << ".profile.csv\n";
            return kExitOk;
        }
        if (sweep->parsed()) {
            auto rows = expmbt::alpha_sweep(sweep_n, sweep_seed);
            expmbt::write_alpha_sweep(sweep_out, rows);
            std::cout << "wrote " << sweep_out << "\n";
            return kExitOk;
        }
        if (gen->parsed()) {
            if (gen_kind == "hamiltonian-pair") {
                auto [t, h] = expmbt::gen_hamiltonian_pair(gen_n, gen_seed);
                expmbt::write_matrix(gen_out + ".T.mtx", t);
                expmbt::write_matrix(gen_out + ".H.mtx", h);
                std::cout << "wrote " << gen_out << ".T.mtx and " << gen_out
                          << ".H.mtx\n";
            } else {
                expmbt::write_matrix(gen_out,
                                     expmbt::gen_testmat(gen_kind, gen_n, gen_seed));
                std::cout << "wrote " << gen_out << "\n";
            }
            return kExitOk;
        }
        if (derive->parsed()) {
            std::printf("%3s  %-24s %-24s\n", "m", "ell_m", "theta_m");
            for (int m : {3, 5, 7, 9, 13}) {
                auto [ell, theta] = expmbt::derive_ell_theta(m);
                std::printf("%3d  %-24.16e %-24.16e\n", m, ell, theta);
            }
            return kExitOk;
        }
        if (validate->parsed())
            return expmbt::report_acceptance(std::cout) ? kExitOk : kExitNumerical;
    } catch (const expmbt::IoError& ex) {
        std::cerr << "io error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
