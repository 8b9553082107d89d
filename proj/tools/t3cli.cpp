//
// t3cli: command-line front-end for t-product tensor algebra.
//
// Exit codes: 0 success / s-diagonal, 1 not s-diagonal, 2 input error,
// 3 inconclusive, 4 argument out of range.
//

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsvd/format.hpp"
#include "tsvd/io.hpp"
#include "tsvd/random.hpp"
#include "tsvd/sdiag.hpp"
#include "tsvd/tsvd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotSDiagonal = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitOutOfRange = 4;

int run_gmap(const std::string& input, const std::string& output,
             const std::string& factors_prefix)
{
    const tsvd::Tensor3 a = tsvd::read_t3_file(input);
    if (factors_prefix.empty()) {
        tsvd::write_t3_file(output, tsvd::gmap(a).to_tensor());
    } else {
        const tsvd::StSvdFactors f = tsvd::st_svd(a);
        tsvd::write_t3_file(output, f.s.to_tensor());
        tsvd::write_t3_file(factors_prefix + ".U.t3", f.u);
        tsvd::write_t3_file(factors_prefix + ".V.t3", f.v);
    }
    return kExitOk;
}

int run_check(const std::string& input, const std::string& level, double tol)
{
    const tsvd::Tensor3 a = tsvd::read_t3_file(input);
    const double off_tol = tol * std::max(1.0, tsvd::frobenius_norm(a));
    const tsvd::FDiagonal3 s = tsvd::FDiagonal3::from_tensor(a, off_tol);

    tsvd::SDiagReport report;
    if (level == "necessary") {
        report = tsvd::check_necessary(s, tol);
    } else if (level == "exact") {
        report = tsvd::check_fixed_point(s, tol);
    } else if (level == "direct") {
        switch (s.depth()) {
            case 2: report = tsvd::check_direct_p2(s, tol); break;
            case 3: report = tsvd::check_direct_p3(s, tol); break;
            case 4: report = tsvd::check_direct_p4(s, tol); break;
            default:
                throw tsvd::WrongP("direct conditions exist only for p = 2, 3, 4; got p = " +
                                   std::to_string(s.depth()));
        }
    } else {
        report = tsvd::classify(s, tol);
    }

    std::cout << report.to_text();
    switch (report.verdict) {
        case tsvd::Verdict::SDiagonal: return kExitOk;
        case tsvd::Verdict::NotSDiagonal: return kExitNotSDiagonal;
        default: return kExitInconclusive;
    }
}

int run_tsv(const std::string& input)
{
    const tsvd::Tensor3 a = tsvd::read_t3_file(input);
    const tsvd::TubalSpectrum spec = tsvd::t_singular_values(a);
    for (size_t i = 0; i < spec.sigmas.size(); ++i)
        std::cout << "sigma " << (i + 1) << ' ' << tsvd::format_double(spec.sigmas[i]) << '\n';
    std::cout << "tubal_rank " << spec.tubal_rank << '\n';
    return kExitOk;
}

int run_truncate(const std::string& input, int rank, const std::string& output)
{
    const tsvd::Tensor3 a = tsvd::read_t3_file(input);
    const tsvd::Tensor3 t = tsvd::truncate(a, rank);
    tsvd::write_t3_file(output, t);
    std::cout << "frob_error " << tsvd::format_double(tsvd::frobenius_norm(a - t)) << '\n';
    return kExitOk;
}

int run_random(int m, int n, int p, unsigned long long seed, const std::string& output)
{
    tsvd::write_t3_file(output, tsvd::random_tensor(m, n, p, seed));
    return kExitOk;
}

int run_verify(const std::string& input)
{
    const tsvd::Tensor3 a = tsvd::read_t3_file(input);
    const double scale = std::max(1.0, tsvd::frobenius_norm(a));
    bool all = true;
    auto report = [&all](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
        all = all && ok;
    };

    const tsvd::StSvdFactors f = tsvd::st_svd(a);
    const tsvd::Tensor3 recon =
        tsvd::tprod(tsvd::tprod(f.u, f.s.to_tensor()), tsvd::transpose(f.v));
    report("reconstruction", tsvd::frobenius_norm(recon - a) <= 1e-10 * scale);
    report("u_orthogonal", tsvd::is_orthogonal(f.u));
    report("v_orthogonal", tsvd::is_orthogonal(f.v));

    const tsvd::FDiagonal3 g = f.s;
    const tsvd::FDiagonal3 gg = tsvd::gmap(g.to_tensor());
    double resid = 0.0;
    for (int i = 0; i < g.min_mn(); ++i)
        for (int k = 0; k < g.depth(); ++k) {
            const double d = gg.diag(i, k) - g.diag(i, k);
            resid += d * d;
        }
    report("gmap_idempotent", std::sqrt(resid) <= 1e-10 * scale);
    report("necessary_conditions",
           tsvd::check_necessary(g).verdict != tsvd::Verdict::NotSDiagonal);

    return all ? kExitOk : kExitNotSDiagonal;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"t-product tensor algebra: ST-SVD, tubal spectra and the "
                 "s-diagonal classifier"};
    app.require_subcommand(1);

    std::string input, output, factors_prefix, level = "auto";
    double tol = 1e-10;
    int rank = 0;
    int m = 0, n = 0, p = 0;
    unsigned long long seed = 0;

    auto* cmd_gmap = app.add_subcommand("gmap", "Write S = G(A) in T3 format");
    cmd_gmap->add_option("input", input)->required();
    cmd_gmap->add_option("output", output)->required();
    cmd_gmap->add_option("--factors", factors_prefix,
                         "Also write <prefix>.U.t3 and <prefix>.V.t3");

    auto* cmd_check = app.add_subcommand("check", "Classify an f-diagonal tensor");
    cmd_check->add_option("input", input)->required();
    cmd_check->add_option("--level", level)
        ->check(CLI::IsMember({"necessary", "exact", "direct", "auto"}));
    cmd_check->add_option("--tol", tol);

    auto* cmd_tsv = app.add_subcommand("tsv", "Print T-singular values and tubal rank");
    cmd_tsv->add_option("input", input)->required();

    auto* cmd_trunc = app.add_subcommand("truncate", "Tubal-rank-r approximation");
    cmd_trunc->add_option("input", input)->required();
    cmd_trunc->add_option("-r", rank, "Target tubal rank")->required();
    cmd_trunc->add_option("output", output)->required();

    auto* cmd_random = app.add_subcommand("random", "Write a seeded standard-normal tensor");
    cmd_random->add_option("m", m)->required();
    cmd_random->add_option("n", n)->required();
    cmd_random->add_option("p", p)->required();
    cmd_random->add_option("--seed", seed);
    cmd_random->add_option("output", output)->required();

    auto* cmd_verify = app.add_subcommand("verify", "Run factorization self-checks");
    cmd_verify->add_option("input", input)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitInputError;
    }

    try {
        if (cmd_gmap->parsed())
            return run_gmap(input, output, factors_prefix);
        if (cmd_check->parsed())
            return run_check(input, level, tol);
        if (cmd_tsv->parsed())
            return run_tsv(input);
        if (cmd_trunc->parsed())
            return run_truncate(input, rank, output);
        if (cmd_random->parsed())
            return run_random(m, n, p, seed, output);
        if (cmd_verify->parsed())
            return run_verify(input);
    } catch (const tsvd::RankOutOfRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOutOfRange;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
