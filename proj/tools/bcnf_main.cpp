// bcnf: certified-chaos verdicts, simulation classification, parameter-space
// sweeps, and phase-portrait export for the 2d border-collision normal form.
//
// Exit codes: 0 success (or CHAOS verdict), 1 STOP verdict, 2 usage error,
// 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bcnf/json_out.hpp"
#include "bcnf/sweep.hpp"

namespace {

struct ParamFlags {
    double tau_L = 0.0, delta_L = 0.0, tau_R = 0.0, delta_R = 0.0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& p) {
    cmd->add_option("--tau-l", p.tau_L, "left-branch trace tau_L")->required();
    cmd->add_option("--delta-l", p.delta_L, "left-branch determinant delta_L")->required();
    cmd->add_option("--tau-r", p.tau_R, "right-branch trace tau_R")->required();
    cmd->add_option("--delta-r", p.delta_R, "right-branch determinant delta_R")->required();
}

struct RangeFlag {
    double lo = 0.0, hi = 0.0;
    int steps = 1;
};

// Parses "lo:hi:steps".
bool parse_range(const std::string& text, RangeFlag& out) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) return false;
    try {
        out.lo = std::stod(text.substr(0, first));
        out.hi = std::stod(text.substr(first + 1, second - first - 1));
        out.steps = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        return false;
    }
    return out.steps >= 1 && out.lo <= out.hi;
}

int write_document(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << path << "\n";
        return 3;
    }
    out << body;
    out.flush();
    if (!out) {
        std::cerr << "write failed: " << path << "\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaos certification for the 2d border-collision normal form"};
    app.require_subcommand(1);

    ParamFlags prove_params;
    CLI::App* prove = app.add_subcommand("prove", "run the five-step decision procedure");
    add_param_flags(prove, prove_params);
    prove->set_config("--config");

    std::string tl_range_text, tr_range_text, sweep_out;
    double sweep_delta_L = 0.2, sweep_delta_R = 2.0;
    int sweep_threads = 1;
    bool sweep_with_sim = false;
    CLI::App* sweep = app.add_subcommand("sweep", "classify a tau_L x tau_R parameter grid to CSV");
    sweep->add_option("--tl-range", tl_range_text, "tau_L range as lo:hi:steps")
        ->default_str("0.05:3:300");
    sweep->add_option("--tr-range", tr_range_text, "tau_R range as lo:hi:steps")
        ->default_str("-3:3:300");
    sweep->add_option("--delta-l", sweep_delta_L, "fixed delta_L")->capture_default_str();
    sweep->add_option("--delta-r", sweep_delta_R, "fixed delta_R")->capture_default_str();
    sweep->add_option("--out", sweep_out, "output CSV path")->required();
    sweep->add_option("--threads", sweep_threads, "worker thread count")->capture_default_str();
    sweep->add_flag("--with-sim", sweep_with_sim, "also classify each point by simulation");
    sweep->set_config("--config");

    ParamFlags sim_params;
    bcnf::SimOptions sim_opts;
    CLI::App* simulate = app.add_subcommand("simulate", "classify one parameter point by simulation");
    add_param_flags(simulate, sim_params);
    simulate->add_option("--transient", sim_opts.transient, "discarded iterations")->capture_default_str();
    simulate->add_option("--samples", sim_opts.samples, "Lyapunov sample count")->capture_default_str();
    simulate->add_option("--period-cap", sim_opts.period_cap, "largest period searched")->capture_default_str();
    simulate->add_option("--tol", sim_opts.period_tol, "periodicity tolerance")->capture_default_str();
    simulate->set_config("--config");

    ParamFlags phase_params;
    std::string phase_out;
    int attractor_samples = 2000;
    CLI::App* phase = app.add_subcommand("phase", "export region polygons and an attractor orbit");
    add_param_flags(phase, phase_params);
    phase->add_option("--attractor-samples", attractor_samples, "attractor points to emit")->capture_default_str();
    phase->add_option("--out", phase_out, "output path (stdout when omitted)");
    phase->set_config("--config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (prove->parsed()) {
            const bcnf::Params params = bcnf::make_params(
                prove_params.tau_L, prove_params.delta_L, prove_params.tau_R, prove_params.delta_R);
            const bcnf::ProofOutcome outcome = bcnf::prove_chaos(params);
            std::cout << bcnf::outcome_to_json(outcome).dump(2) << "\n";
            return outcome.chaos() ? 0 : 1;
        }

        if (sweep->parsed()) {
            bcnf::GridSpec grid;
            RangeFlag range;
            if (!tl_range_text.empty()) {
                if (!parse_range(tl_range_text, range)) throw std::invalid_argument("bad --tl-range");
                grid.tl_lo = range.lo; grid.tl_hi = range.hi; grid.tl_steps = range.steps;
            }
            if (!tr_range_text.empty()) {
                if (!parse_range(tr_range_text, range)) throw std::invalid_argument("bad --tr-range");
                grid.tr_lo = range.lo; grid.tr_hi = range.hi; grid.tr_steps = range.steps;
            }
            grid.delta_L = sweep_delta_L;
            grid.delta_R = sweep_delta_R;
            bcnf::SweepOptions opts;
            opts.threads = sweep_threads;
            opts.with_sim = sweep_with_sim;
            const auto rows = bcnf::run_sweep(grid, opts);
            return write_document(sweep_out, bcnf::sweep_to_csv(rows));
        }

        if (simulate->parsed()) {
            const bcnf::Params params = bcnf::make_params(
                sim_params.tau_L, sim_params.delta_L, sim_params.tau_R, sim_params.delta_R);
            const bcnf::Classification c = bcnf::classify_point(params, sim_opts);
            std::cout << bcnf::classification_to_json(c).dump(2) << "\n";
            return 0;
        }

        if (phase->parsed()) {
            const bcnf::Params params = bcnf::make_params(
                phase_params.tau_L, phase_params.delta_L, phase_params.tau_R, phase_params.delta_R);
            const bcnf::ProofOutcome outcome = bcnf::prove_chaos(params);
            if (!outcome.p_min || !outcome.p_max) {
                std::cout << bcnf::outcome_to_json(outcome).dump(2) << "\n";
                std::cerr << "region not constructible: " << outcome.stop_reason << "\n";
                return 1;
            }
            const bcnf::PreimageFan fan = bcnf::preimage_fan(params, 15);
            const auto region = bcnf::build_trapping(params, fan, *outcome.p_min, *outcome.p_max,
                                                     bcnf::default_caps(fan));
            if (!region) {
                std::cout << bcnf::outcome_to_json(outcome).dump(2) << "\n";
                std::cerr << "region not constructible\n";
                return 1;
            }
            const auto doc = bcnf::phase_to_json(params, outcome, *region, fan, attractor_samples);
            return write_document(phase_out, doc.dump(2) + "\n");
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
