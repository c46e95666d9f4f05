#pragma once

// The five-step decision procedure. A CHAOS verdict certifies a trapping
// region for the induced return map together with an invariant expanding
// cone, and hence a positive lower bound on the Lyapunov exponent of almost
// every orbit in the region.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcnf/cone.hpp"
#include "bcnf/trapping.hpp"

namespace bcnf {

enum class Verdict { Chaos, Stop };

// Per-pair angle data recorded for audit when steps 4-5 run.
struct AngleAudit {
    int p = 0, q = 0;
    double stable = 0.0, unstable = 0.0;
    std::optional<double> dec, inc;  // H = 1 crossings, when they exist
};

// Everything the procedure established before it stopped (or finished).
// Fields belonging to steps after the stopping step stay empty.
struct ProofOutcome {
    Verdict verdict = Verdict::Stop;
    int stop_step = 0;                    // 1..5 when verdict == Stop
    std::string stop_reason;
    std::optional<int> p_min, p_max;
    std::optional<int> q_min, q_max;
    std::optional<CircleInterval> J;
    std::optional<double> expansion_factor;    // c > 1
    std::optional<double> lyapunov_lower_bound;  // ln(c)/(p_max + q_max)
    std::optional<std::pair<int, int>> failing_pair;
    std::vector<AngleAudit> angles;

    bool chaos() const { return verdict == Verdict::Chaos; }
};

struct ProverOptions {
    int p_scan_bound = 15;   // upper end of the step-1 scan over p
    int chi_R_cap = 1000;
    double condition_margin = 0.0;  // extra slack demanded of the four inequalities
};

// Runs the procedure:
//   1. smallest p in {2..min(p*, bound)} whose S-side conditions hold,
//   2. largest p below it whose T-side conditions hold,
//   3. eigenvalue-splitting test on every matrix of Gamma,
//   4. unmixed fixed points and the interval J,
//   5. expansion of the cone over J, then the Lyapunov bound.
ProofOutcome prove_chaos(const Params& params, const ProverOptions& opts = {});

// ln(c)/(p_max + q_max); rejects c <= 1.
double certified_bound(double c, int p_max, int q_max);

}  // namespace bcnf
