#include "bcnf/sweep.hpp"

#include <atomic>
#include <charconv>
#include <stdexcept>
#include <thread>

namespace bcnf {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double grid_value(double lo, double hi, int steps, int i) {
    if (steps <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

const char* const kSweepCsvHeader =
    "tau_L,tau_R,verdict,stop_step,p_min,p_max,q_min,q_max,"
    "expansion_factor,lyap_bound,sim_kind,sim_period,sim_lyap";

namespace {

void append_optional_int(std::string& s, const std::optional<int>& v) {
    s.push_back(',');
    if (v) s += std::to_string(*v);
}

void append_optional_double(std::string& s, const std::optional<double>& v) {
    s.push_back(',');
    if (v) s += format_double(*v);
}

const char* sim_kind_name(SimKind k) {
    switch (k) {
        case SimKind::Periodic: return "periodic";
        case SimKind::NegLyapunov: return "neg_le";
        case SimKind::PosLyapunov: return "pos_le";
        case SimKind::Diverged: return "diverged";
    }
    return "";
}

}  // namespace

std::string sweep_row_csv(const SweepRow& row) {
    std::string s = format_double(row.tau_L);
    s.push_back(',');
    s += format_double(row.tau_R);
    s.push_back(',');
    s += row.outcome.chaos() ? "chaos" : "stop";
    s.push_back(',');
    if (!row.outcome.chaos()) s += std::to_string(row.outcome.stop_step);
    append_optional_int(s, row.outcome.p_min);
    append_optional_int(s, row.outcome.p_max);
    append_optional_int(s, row.outcome.q_min);
    append_optional_int(s, row.outcome.q_max);
    append_optional_double(s, row.outcome.expansion_factor);
    append_optional_double(s, row.outcome.lyapunov_lower_bound);
    s.push_back(',');
    if (row.has_sim) s += sim_kind_name(row.sim.kind);
    s.push_back(',');
    if (row.has_sim && row.sim.kind == SimKind::Periodic) s += std::to_string(row.sim.period);
    append_optional_double(s, row.has_sim ? row.sim.lyapunov : std::nullopt);
    return s;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepCsvHeader;
    out.push_back('\n');
    for (const SweepRow& r : rows) {
        out += sweep_row_csv(r);
        out.push_back('\n');
    }
    return out;
}

std::vector<SweepRow> run_sweep(const GridSpec& grid, const SweepOptions& opts) {
    if (grid.tl_steps < 1 || grid.tr_steps < 1) {
        throw std::invalid_argument("run_sweep: steps must be >= 1");
    }
    if (!(grid.tl_lo <= grid.tl_hi) || !(grid.tr_lo <= grid.tr_hi)) {
        throw std::invalid_argument("run_sweep: range lo must not exceed hi");
    }
    if (!(grid.tl_lo > 0.0)) throw std::invalid_argument("run_sweep: tau_L range must be positive");
    if (!(grid.delta_L > 0.0) || !(grid.delta_R > 0.0)) {
        throw std::invalid_argument("run_sweep: delta_L and delta_R must be positive");
    }

    const int total = grid.tl_steps * grid.tr_steps;
    std::vector<SweepRow> rows(static_cast<size_t>(total));

    auto compute = [&](int idx) {
        const int i = idx / grid.tr_steps;
        const int k = idx % grid.tr_steps;
        SweepRow& row = rows[static_cast<size_t>(idx)];
        row.tau_L = grid_value(grid.tl_lo, grid.tl_hi, grid.tl_steps, i);
        row.tau_R = grid_value(grid.tr_lo, grid.tr_hi, grid.tr_steps, k);
        const Params params = make_params(row.tau_L, grid.delta_L, row.tau_R, grid.delta_R);
        row.outcome = prove_chaos(params, opts.prover);
        if (opts.with_sim) {
            row.has_sim = true;
            row.sim = classify_point(params, opts.sim);
        }
    };

    const int workers = std::max(1, opts.threads);
    if (workers == 1) {
        for (int idx = 0; idx < total; ++idx) compute(idx);
        return rows;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) compute(idx);
        });
    }
    for (std::thread& t : pool) t.join();
    return rows;
}

}  // namespace bcnf
