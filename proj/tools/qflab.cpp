#include "qflab/bhf.hpp"
#include "qflab/bogoliubov.hpp"
#include "qflab/fock.hpp"
#include "qflab/gaussian.hpp"
#include "qflab/json_io.hpp"
#include "qflab/linalg.hpp"
#include "qflab/representability.hpp"
#include "qflab/wick.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using qflab::Json;

constexpr const char* kVersion = "qflab 0.1.0";

// exit codes: 0 pass, 1 checked-property failure, 2 usage/input error,
// 3 numerical error (branch ambiguity, cutoff safety, convergence)
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommandResult {
    Json report;
    int exit_code = kExitPass;
};

CommandResult run_purity(const Json& config) {
    const Json state_json = qflab::load_json_file(config.at("state"));
    const qflab::StateSpec spec = qflab::state_from_json(state_json);
    std::unique_ptr<qflab::ModeSpace> space;
    if (config.contains("space") && !config.at("space").get<std::string>().empty())
        space = std::make_unique<qflab::ModeSpace>(
            qflab::space_from_json(qflab::load_json_file(config.at("space"))));
    const double tol = config.at("tol").get<double>();

    qflab::GaussianData g = qflab::state_to_gaussian(spec, space.get());
    Json report;
    report["command"] = "purity";
    report["statistics"] = qflab::to_string(g.statistics);
    bool pure;
    if (g.statistics == qflab::Statistics::Boson && g.b.norm() > 1e-10) {
        const double further = qflab::further_purity_residual(g);
        const qflab::PurityReport centered = qflab::check_boson_purity(qflab::recenter(g), tol);
        pure = further <= tol;
        report["further_residual"] = further;
        report["recentered_residual"] = centered.residual;
        report["recentered_scalar_residual"] = centered.scalar_residual;
        report["verdicts_agree"] = centered.pure == pure;
    } else {
        const qflab::PurityReport r = qflab::check_purity(g, tol);
        pure = r.pure;
        report["residual"] = r.residual;
        report["scalar_residual"] = r.scalar_residual;
        if (g.statistics == qflab::Statistics::Boson)
            report["further_residual"] = qflab::further_purity_residual(g);
    }
    report["tol"] = tol;
    report["pure"] = pure;
    return {report, pure ? kExitPass : kExitFail};
}

// matrix-condition checks on a bare (gamma, Gamma) pair, e.g. corrupted input
CommandResult run_repr_pair(const Json& state_json, qflab::Statistics statistics) {
    const qflab::Matrix gamma = qflab::matrix_from_json(state_json.at("gamma"));
    const qflab::Matrix gamma2 = qflab::matrix_from_json(state_json.at("Gamma"));
    const double expected_n = state_json.contains("expected_n")
                                  ? state_json.at("expected_n").get<double>()
                                  : gamma.trace().real();
    Json report;
    report["command"] = "repr";
    const auto adm = qflab::check_admissible(gamma, gamma2, expected_n, statistics);
    report["admissible"] = {{"ok", adm.ok}};
    const auto p = qflab::check_P(gamma2);
    report["P"] = {{"ok", p.ok}, {"min_eig", p.min_eig}};
    if (!p.ok) report["P"]["witness"] = qflab::vector_to_json(p.witness);
    bool all_ok = adm.ok && p.ok;
    if (statistics == qflab::Statistics::Boson) {
        const auto gcond = qflab::check_G(gamma, gamma2);
        report["G"] = {{"ok", gcond.ok},
                       {"min_eig", gcond.min_eig},
                       {"worst_sampled", gcond.worst_sampled}};
        if (!gcond.ok) report["G"]["witness"] = qflab::matrix_to_json(gcond.witness);
        const auto q = qflab::check_Q(gamma, gamma2);
        report["Q"] = {{"ok", q.ok}, {"min_eig", q.min_eig}};
        all_ok = all_ok && gcond.ok && q.ok;
    }
    report["ok"] = all_ok;
    return {report, all_ok ? kExitPass : kExitFail};
}

CommandResult run_repr(const Json& config) {
    const qflab::ModeSpace space =
        qflab::space_from_json(qflab::load_json_file(config.at("space")));
    const Json state_json = qflab::load_json_file(config.at("state"));
    if (state_json.contains("type") && state_json.at("type") == "pair")
        return run_repr_pair(state_json, space.statistics());
    const qflab::StateSpec spec = qflab::state_from_json(state_json);
    const double tol = config.at("tol").get<double>();
    const int samples = config.at("samples").get<int>();
    const std::uint64_t seed = config.at("seed").get<std::uint64_t>();

    const qflab::Matrix rho = qflab::state_to_density(spec, space);
    const qflab::Matrix gamma2 = qflab::two_pdm_from_state(space, rho);
    const qflab::GaussianData g = qflab::gaussian_from_density_matrix(space, rho);
    const qflab::Matrix number = space.number_operator();
    const double expected_n = std::real((rho * number).trace());

    Json report;
    report["command"] = "repr";
    const auto adm = qflab::check_admissible(g.gamma, gamma2, expected_n,
                                             space.statistics());
    report["admissible"] = {{"ok", adm.ok},
                            {"gamma_hermitian", adm.gamma_hermitian},
                            {"gamma_psd", adm.gamma_psd},
                            {"trace_matches", adm.trace_matches},
                            {"trace_defect", adm.trace_defect},
                            {"gamma2_hermitian", adm.gamma2_hermitian},
                            {"gamma2_exchange_symmetric", adm.gamma2_exchange_symmetric}};
    const auto p = qflab::check_P(gamma2);
    report["P"] = {{"ok", p.ok}, {"min_eig", p.min_eig}};
    bool all_ok = adm.ok && p.ok;
    if (space.statistics() == qflab::Statistics::Boson) {
        const auto gcond = qflab::check_G(g.gamma, gamma2);
        report["G"] = {{"ok", gcond.ok},
                       {"min_eig", gcond.min_eig},
                       {"worst_sampled", gcond.worst_sampled}};
        const auto q = qflab::check_Q(g.gamma, gamma2);
        report["Q"] = {{"ok", q.ok}, {"min_eig", q.min_eig}};
        const qflab::Gen2Pdm gen2 = qflab::assemble_gen2pdm(space, rho);
        const auto psd = qflab::check_gen2pdm_psd(gen2);
        report["gen2pdm_psd"] = {{"ok", psd.ok}, {"min_eig", psd.min_eig}};
        const qflab::Matrix corner =
            gen2.m.bottomRightCorner(2 * space.n_modes() + 1, 2 * space.n_modes() + 1);
        const double corner_defect =
            qflab::spectral_norm(corner - qflab::further_gen1pdm(g));
        report["corner_defect"] = corner_defect;
        const auto sampling =
            qflab::polynomial_positivity_harness(space, rho, gen2, samples, seed);
        report["polynomial_sampling"] = {{"ok", sampling.ok},
                                         {"min_sampled", sampling.min_sampled},
                                         {"psd_agrees", sampling.psd_agrees},
                                         {"oracle_agrees", sampling.oracle_agrees},
                                         {"max_oracle_gap", sampling.max_oracle_gap}};
        if (!sampling.ok)
            report["witness_polynomial"] = qflab::vector_to_json(sampling.witness);
        all_ok = all_ok && gcond.ok && q.ok && psd.ok && sampling.ok &&
                 sampling.psd_agrees && sampling.oracle_agrees &&
                 corner_defect <= tol;
    }
    report["ok"] = all_ok;
    return {report, all_ok ? kExitPass : kExitFail};
}

CommandResult run_wick(const Json& config) {
    const qflab::LadderPolynomial poly = qflab::parse(config.at("expr").get<std::string>());
    const Json state_json = qflab::load_json_file(config.at("state"));
    const qflab::StateSpec spec = qflab::state_from_json(state_json);
    std::unique_ptr<qflab::ModeSpace> space;
    if (config.contains("space") && !config.at("space").get<std::string>().empty())
        space = std::make_unique<qflab::ModeSpace>(
            qflab::space_from_json(qflab::load_json_file(config.at("space"))));

    const qflab::GaussianData g = qflab::state_to_gaussian(spec, space.get());
    const qflab::Complex value = qflab::quasifree_expectation(g, poly);
    Json report;
    report["command"] = "wick";
    report["expr"] = qflab::to_string(poly);
    report["value"] = {{"re", value.real()}, {"im", value.imag()}};
    int code = kExitPass;
    if (config.at("cross_check").get<bool>()) {
        if (!space)
            throw qflab::InvalidInput("--cross-check needs --space to build the oracle");
        const qflab::Matrix rho = qflab::state_to_density(spec, *space);
        const qflab::Complex oracle = qflab::oracle_expectation(*space, rho, poly);
        const double gap = std::abs(value - oracle);
        const bool agree = gap <= 1e-7 * std::max(1.0, std::abs(oracle));
        report["oracle"] = {{"re", oracle.real()}, {"im", oracle.imag()}};
        report["oracle_gap"] = gap;
        report["oracle_agrees"] = agree;
        if (!agree) code = kExitFail;
    }
    return {report, code};
}

CommandResult run_bhf(const Json& config) {
    const qflab::TwoBodyHamiltonian model =
        qflab::model_from_json(qflab::load_json_file(config.at("model")));
    const std::string mode = config.at("mode").get<std::string>();
    qflab::MinimizeOptions opts;
    opts.restarts = config.at("restarts").get<int>();
    opts.seed = config.at("seed").get<std::uint64_t>();
    opts.boson_probe_cutoff = config.at("cutoff").get<int>();

    Json report;
    report["command"] = "bhf";
    report["mode"] = mode;
    report["seed"] = opts.seed;
    int code = kExitPass;
    if (mode == "pure" || mode == "mixed") {
        opts.mixed = mode == "mixed";
        const qflab::MinimizeResult result = qflab::minimize(model, opts);
        report["E"] = result.energy;
        report["params"] = qflab::params_to_json(result.params);
        report["converged"] = result.converged;
        report["evaluations"] = result.evaluations;
        if (!result.converged) code = kExitNumerical;
    } else if (mode == "both") {
        const qflab::GapReport gap = qflab::verify_pure_equals_mixed(model, opts, 20);
        report["E_pure"] = gap.e_pure;
        report["E_mixed"] = gap.e_mixed;
        report["gap"] = gap.gap;
        report["gap_ok"] = gap.gap_ok;
        report["sampled_ok"] = gap.sampled_ok;
        report["min_sampled_mixed"] = gap.min_sampled;
        report["params"] = qflab::params_to_json(gap.pure_params);
        if (!gap.gap_ok || !gap.sampled_ok) code = kExitFail;
    } else {
        throw qflab::InvalidInput("mode must be pure, mixed or both");
    }
    return {report, code};
}

CommandResult dispatch(const std::string& command, const Json& config) {
    if (command == "purity") return run_purity(config);
    if (command == "repr") return run_repr(config);
    if (command == "wick") return run_wick(config);
    if (command == "bhf") return run_bhf(config);
    throw qflab::InvalidInput("unknown command '" + command + "'");
}

std::vector<std::string> input_paths(const std::string& command, const Json& config) {
    std::vector<std::string> paths;
    for (const char* key : {"state", "space", "model"})
        if (config.contains(key) && !config.at(key).get<std::string>().empty())
            paths.push_back(config.at(key).get<std::string>());
    (void)command;
    return paths;
}

int run_and_write(const std::string& command, const Json& config,
                  const std::string& report_path, const std::string& manifest_path) {
    const auto started = std::chrono::steady_clock::now();
    const CommandResult result = dispatch(command, config);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    qflab::write_json_file(report_path, result.report);

    Json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["config"] = config;
    Json inputs;
    for (const auto& path : input_paths(command, config))
        inputs[path] = qflab::file_digest(path);
    manifest["inputs"] = inputs;
    manifest["report_path"] = report_path;
    manifest["report_digest"] = qflab::file_digest(report_path);
    manifest["wall_time_s"] = wall;
    qflab::write_json_file(manifest_path, manifest);

    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
}

int run_replay(const std::string& manifest_path, std::string out_path) {
    const Json manifest = qflab::load_json_file(manifest_path);
    const std::string command = manifest.at("command").get<std::string>();
    const Json config = manifest.at("config");
    const std::string original = manifest.at("report_path").get<std::string>();
    if (out_path.empty()) out_path = original + ".replay";

    const CommandResult result = dispatch(command, config);
    qflab::write_json_file(out_path, result.report);

    bool match = false;
    if (std::filesystem::exists(original)) {
        std::ifstream a(original, std::ios::binary), b(out_path, std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        match = sa.str() == sb.str();
    }
    std::cout << "replay report: " << out_path << "\n"
              << "matches original: " << (match ? "true" : "false") << "\n";
    return match ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for quasifree states on truncated Fock spaces"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string state_path, space_path, model_path, expr, report_path, manifest_path;
    std::string mode = "both", replay_out;
    double tol = 1e-7;
    int samples = 100, restarts = 20, cutoff = 10;
    std::uint64_t seed = 1;
    bool cross_check = false;

    auto* purity = app.add_subcommand("purity", "Purity characterization of a state");
    purity->add_option("--state", state_path, "state JSON")->required();
    purity->add_option("--space", space_path, "mode-space JSON (for density states)");
    purity->add_option("--tol", tol, "purity residual tolerance");
    purity->add_option("--report", report_path, "report output path");

    auto* repr = app.add_subcommand("repr", "Representability conditions of a state");
    repr->add_option("--state", state_path, "state JSON")->required();
    repr->add_option("--space", space_path, "mode-space JSON")->required();
    repr->add_option("--samples", samples, "sampled polynomials");
    repr->add_option("--seed", seed, "RNG seed");
    repr->add_option("--tol", tol, "corner-match tolerance");
    repr->add_option("--report", report_path, "report output path");

    auto* wick = app.add_subcommand("wick", "Quasifree expectation of a ladder polynomial");
    wick->add_option("--expr", expr, "ladder polynomial text")->required();
    wick->add_option("--state", state_path, "state JSON")->required();
    wick->add_option("--space", space_path, "mode-space JSON (for the oracle)");
    wick->add_flag("--cross-check", cross_check, "also evaluate the Fock oracle");
    wick->add_option("--report", report_path, "report output path");

    auto* bhf = app.add_subcommand("bhf", "Variational quasifree energy minimization");
    bhf->add_option("--model", model_path, "model JSON")->required();
    bhf->add_option("--mode", mode, "pure, mixed or both");
    bhf->add_option("--restarts", restarts, "optimizer restarts");
    bhf->add_option("--seed", seed, "RNG seed");
    bhf->add_option("--cutoff", cutoff, "boson boundedness-probe truncation");
    bhf->add_option("--report", report_path, "report output path");

    auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest");
    std::string replay_manifest;
    replay->add_option("manifest", replay_manifest, "manifest JSON")->required();
    replay->add_option("--out", replay_out, "replay report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay->parsed()) return run_replay(replay_manifest, replay_out);

        Json config;
        std::string command;
        if (purity->parsed()) {
            command = "purity";
            config["state"] = state_path;
            config["space"] = space_path;
            config["tol"] = tol;
        } else if (repr->parsed()) {
            command = "repr";
            config["state"] = state_path;
            config["space"] = space_path;
            config["samples"] = samples;
            config["seed"] = seed;
            config["tol"] = tol;
        } else if (wick->parsed()) {
            command = "wick";
            config["expr"] = expr;
            config["state"] = state_path;
            config["space"] = space_path;
            config["cross_check"] = cross_check;
        } else if (bhf->parsed()) {
            command = "bhf";
            config["model"] = model_path;
            config["mode"] = mode;
            config["restarts"] = restarts;
            config["seed"] = seed;
            config["cutoff"] = cutoff;
        }
        if (report_path.empty()) report_path = command + "_report.json";
        if (manifest_path.empty()) manifest_path = report_path + ".manifest.json";
        return run_and_write(command, config, report_path, manifest_path);
    } catch (const qflab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qflab::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qflab::NotADensityMatrix& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qflab::DimensionOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qflab::Error& e) {
        // CutoffUnsafe, BranchAmbiguity, boundedness probe, convergence
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
