#pragma once

// Parameter-grid classification: one row per (tau_L, tau_R) grid point with
// the prover verdict and, optionally, the simulation classification.
// Row order is tau_L-major and independent of the worker count.

#include <string>
#include <vector>

#include "bcnf/prover.hpp"
#include "bcnf/sim.hpp"

namespace bcnf {

struct GridSpec {
    double tl_lo = 0.05, tl_hi = 3.0;
    int tl_steps = 300;
    double tr_lo = -3.0, tr_hi = 3.0;
    int tr_steps = 300;
    double delta_L = 0.2;
    double delta_R = 2.0;
};

struct SweepRow {
    double tau_L = 0.0, tau_R = 0.0;
    ProofOutcome outcome;
    bool has_sim = false;
    Classification sim;
};

struct SweepOptions {
    int threads = 1;
    bool with_sim = false;
    ProverOptions prover;
    SimOptions sim;
};

// Shortest decimal representation that reloads to the same double.
std::string format_double(double v);

// Grid coordinate i of n between lo and hi (endpoints included).
double grid_value(double lo, double hi, int steps, int i);

std::vector<SweepRow> run_sweep(const GridSpec& grid, const SweepOptions& opts);

extern const char* const kSweepCsvHeader;

std::string sweep_row_csv(const SweepRow& row);

// Full CSV document: header plus one line per row, LF newlines.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace bcnf
