#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shc/diag_correct.hpp"
#include "shc/error.hpp"
#include "shc/harness.hpp"
#include "shc/io.hpp"
#include "shc/sh_correct.hpp"
#include "shc/strong_sh.hpp"

namespace {

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw shc::Error(shc::ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur-Horn correction toolkit"};
    app.require_subcommand(1);

    std::string d_arg, l_arg, a_arg, cert_arg, config_arg, out_path;
    std::size_t index = 0;
    double eps = 0.0;

    auto* construct = app.add_subcommand("construct", "matrix with diagonal d and spectrum lambda_tilde");
    construct->add_option("-d,--diag", d_arg, "diagonal (JSON array or file)")->required();
    construct->add_option("-l,--lambda", l_arg, "spectrum (JSON array or file)")->required();
    construct->add_option("-o,--out", out_path, "certificate output (default stdout)");

    auto* correct = app.add_subcommand("correct", "correct A towards spectrum lambda_tilde keeping its diagonal");
    correct->add_option("-A,--matrix", a_arg, "matrix (JSON or file)")->required();
    correct->add_option("-l,--lambda", l_arg, "spectrum (JSON array or file)")->required();
    correct->add_option("-o,--out", out_path, "certificate output (default stdout)");

    auto* decompose = app.add_subcommand("decompose", "block decomposition of A");
    decompose->add_option("-A,--matrix", a_arg, "matrix (JSON or file)")->required();

    auto* violate = app.add_subcommand("violate", "perturbation violating the i-th majorization inequality");
    violate->add_option("-l,--lambda", l_arg, "eigenvalues (JSON array or file)")->required();
    violate->add_option("-d,--diag", d_arg, "diagonal (JSON array or file)")->required();
    violate->add_option("-i,--index", index, "1-based partial-sum index")->required();
    violate->add_option("--eps", eps, "perturbation size")->required();

    auto* sweep = app.add_subcommand("sweep", "eps sweep with log-log slope fit");
    sweep->add_option("-c,--config", config_arg, "sweep config (JSON or file)")->required();
    sweep->add_option("-o,--out", out_path, "CSV output (default stdout)");

    auto* validate = app.add_subcommand("validate", "recheck a certificate");
    validate->add_option("-A,--matrix", a_arg, "matrix (JSON or file)")->required();
    validate->add_option("-l,--lambda", l_arg, "spectrum (JSON array or file)")->required();
    validate->add_option("--cert", cert_arg, "certificate (JSON or file)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    using namespace shc;
    try {
        if (construct->parsed()) {
            const auto d = io::vector_from_json(io::read_json_arg(d_arg));
            const auto l = io::vector_from_json(io::read_json_arg(l_arg));
            emit(io::certificate_to_json(correct_diagonal(d, l)), out_path);
        } else if (correct->parsed()) {
            const auto a = io::matrix_from_json(io::read_json_arg(a_arg));
            const auto l = io::vector_from_json(io::read_json_arg(l_arg));
            const auto cert = a.is_complex() ? schur_horn_correct_hermitian(a, l) : schur_horn_correct(a, l);
            emit(io::certificate_to_json(cert), out_path);
        } else if (decompose->parsed()) {
            emit(io::partition_to_json(block_decompose(io::matrix_from_json(io::read_json_arg(a_arg)))), "");
        } else if (violate->parsed()) {
            const auto l = io::vector_from_json(io::read_json_arg(l_arg));
            const auto d = io::vector_from_json(io::read_json_arg(d_arg));
            emit(io::vector_to_json(gen_violation_perturbation(l, d, index, eps)), "");
        } else if (sweep->parsed()) {
            const auto cfg = io::sweep_config_from_json(io::read_json_arg(config_arg));
            const auto r = epsilon_sweep(cfg);
            if (out_path.empty() || out_path == "-") {
                write_sweep_csv(std::cout, r);
            } else {
                std::ofstream out(out_path);
                if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
                write_sweep_csv(out, r);
            }
            std::fprintf(stderr, "slope %.4f  95%% band [%.4f, %.4f]  failures %zu\n", r.fit.slope, r.fit.lo, r.fit.hi,
                         r.failures);
        } else if (validate->parsed()) {
            const auto a = io::matrix_from_json(io::read_json_arg(a_arg));
            const auto l = io::vector_from_json(io::read_json_arg(l_arg));
            const auto cert = io::certificate_from_json(io::read_json_arg(cert_arg));
            const auto rep = validate_certificate(a, l, cert);
            const nlohmann::json j = {{"diag_ok", rep.diag_ok},
                                      {"spectrum_ok", rep.spectrum_ok},
                                      {"chain_ok", rep.chain_ok},
                                      {"orthogonality_ok", rep.orthogonality_ok},
                                      {"diag_residual", rep.diag_residual},
                                      {"spectrum_residual", rep.spectrum_residual},
                                      {"chain_residual", rep.chain_residual},
                                      {"orthogonality_defect", rep.orthogonality_defect}};
            std::cout << j.dump(2) << '\n';
            return rep.ok() ? 0 : 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_feasibility_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
