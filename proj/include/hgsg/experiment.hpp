#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgsg/adaptive.hpp"
#include "hgsg/functions.hpp"

namespace hgsg {

/// One batch study: a function family plus the (epsilon, p_max) grid to run.
struct ExperimentConfig {
    TestFunctionId function = TestFunctionId::F4;
    std::int32_t d = 2;
    ScheduleKind schedule = ScheduleKind::A;  // ignored for f1
    double lambda = 1.0;
    std::vector<double> w;  // empty -> all 0.5

    std::vector<std::int32_t> p_max_list{1};
    std::vector<double> epsilon_list{1e-6};
    IndicatorMode indicator_mode = IndicatorMode::Absolute;
    TerminationMode termination_mode = TerminationMode::Modified;
    bool paired_termination = false;  // run classic and modified per cell

    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::uint64_t max_points = 2'000'000;
    std::int32_t max_level = 30;
    std::string export_grid;  // single-cell runs only
};

/// Parses the JSON key-value config document; throws config_error naming the
/// offending field.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct ResultRow {
    std::string function;
    std::int32_t d = 0;
    std::string schedule;  // empty for f1
    double lambda = 0.0;   // meaningful only with schedule C
    std::int32_t p_max = 0;
    double epsilon = 0.0;
    std::string indicator;
    std::string termination;
    std::uint64_t n_evals = 0;
    double err_linf = 0.0;
    double err_l2 = 0.0;
    double err_integral_abs = 0.0;
    std::string termination_reason;
};

/// CSV header + rows; reals at 17 significant digits, '.' decimal point.
std::string csv_header();
std::string to_csv_row(const ResultRow& row);
std::string to_csv(const std::vector<ResultRow>& rows);

/// Runs every (epsilon, p_max[, mode]) cell of the config; rows in config
/// order, independent cells distributed over `threads` workers. Wall time
/// per cell is reported through `log` (stderr by default), never in rows.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned threads = 1,
                                      std::ostream* log = nullptr);

/// Like run_experiment but rows are sorted by n_evals ascending (ties by
/// p_max, epsilon, termination) for convergence plots. Requires >= 2
/// epsilon values.
std::vector<ResultRow> sweep(const ExperimentConfig& config, unsigned threads = 1,
                             std::ostream* log = nullptr);

/// Named benchmark scenarios; each expands to one or more configs.
std::vector<std::string> preset_names();
std::vector<ExperimentConfig> preset(const std::string& name);

/// A small matplotlib stub that plots error-vs-evaluations curves from a CSV
/// produced by this tool.
std::string plot_script_stub();

}  // namespace hgsg
