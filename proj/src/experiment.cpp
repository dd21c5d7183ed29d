#include "hgsg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <mutex>
#include <thread>

#include "hgsg/errors.hpp"
#include "hgsg/serialization.hpp"

namespace hgsg {

namespace {

using nlohmann::json;

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string mode_name(IndicatorMode m) {
    return m == IndicatorMode::Absolute ? "absolute" : "relative";
}
std::string mode_name(TerminationMode m) {
    return m == TerminationMode::Classic ? "classic" : "modified";
}

IndicatorMode parse_indicator(const std::string& s) {
    if (s == "absolute") return IndicatorMode::Absolute;
    if (s == "relative") return IndicatorMode::Relative;
    throw config_error("indicator_mode: expected 'absolute' or 'relative', got '" + s + "'");
}

TerminationMode parse_termination(const std::string& s) {
    if (s == "classic") return TerminationMode::Classic;
    if (s == "modified") return TerminationMode::Modified;
    throw config_error("termination_mode: expected 'classic' or 'modified', got '" + s + "'");
}

template <typename T>
std::vector<T> number_or_list(const json& j) {
    std::vector<T> out;
    if (j.is_array())
        for (const json& e : j) out.push_back(e.get<T>());
    else
        out.push_back(j.get<T>());
    return out;
}

/// One (epsilon, p_max, termination) cell of a study.
struct Cell {
    double epsilon;
    std::int32_t p_max;
    TerminationMode termination;
};

TestFunction build_function(const ExperimentConfig& cfg) {
    std::vector<double> c;
    if (cfg.function != TestFunctionId::F1)
        c = coefficient_schedule(cfg.schedule, cfg.d, cfg.lambda);
    return TestFunction::make(cfg.function, cfg.d, std::move(c), cfg.w);
}

ResultRow run_cell(const ExperimentConfig& cfg, const TestFunction& tf, const Cell& cell,
                   std::ostream* log) {
    AdaptiveConfig ac;
    ac.epsilon = cell.epsilon;
    ac.indicator_mode = cfg.indicator_mode;
    ac.termination_mode = cell.termination;
    ac.rule = DegreeRule{cell.p_max};
    ac.max_points = cfg.max_points;
    ac.max_level = cfg.max_level;
    ac.seed = cfg.seed;

    auto start = std::chrono::steady_clock::now();
    auto [state, report] = run(make_evaluator(tf), cfg.d, ac);
    ErrorMetrics metrics =
        compute_metrics(make_evaluator(tf), state, reference_integral(tf), cfg.samples, cfg.seed);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ResultRow row;
    row.function = to_string(tf.id);
    row.d = cfg.d;
    row.schedule = tf.id == TestFunctionId::F1 ? "" : to_string(cfg.schedule);
    row.lambda = cfg.lambda;
    row.p_max = cell.p_max;
    row.epsilon = cell.epsilon;
    row.indicator = mode_name(cfg.indicator_mode);
    row.termination = mode_name(cell.termination);
    row.n_evals = report.evaluations;
    row.err_linf = metrics.linf;
    row.err_l2 = metrics.l2;
    row.err_integral_abs = std::abs(metrics.integral_signed);
    row.termination_reason =
        report.reason == TerminationReason::Converged ? "converged" : "capped";

    if (!cfg.export_grid.empty()) save_grid(state, cfg.export_grid);
    if (log)
        *log << "[hgsg] " << row.function << " d=" << row.d << " p=" << row.p_max
             << " eps=" << fmt_real(row.epsilon) << " mode=" << row.termination
             << " N=" << row.n_evals << " wall=" << fmt_real(elapsed) << "s\n";
    return row;
}

std::vector<ResultRow> run_cells(const ExperimentConfig& cfg, unsigned threads,
                                 std::ostream* log) {
    TestFunction tf = build_function(cfg);
    std::vector<Cell> cells;
    for (double eps : cfg.epsilon_list)
        for (std::int32_t p : cfg.p_max_list) {
            if (cfg.paired_termination) {
                cells.push_back({eps, p, TerminationMode::Classic});
                cells.push_back({eps, p, TerminationMode::Modified});
            } else {
                cells.push_back({eps, p, cfg.termination_mode});
            }
        }
    if (!cfg.export_grid.empty() && cells.size() > 1)
        throw config_error("export_grid: only valid for a single-cell run");
    for (double eps : cfg.epsilon_list)
        if (!(eps > 0.0)) throw config_error("epsilon: values must be positive");

    std::vector<ResultRow> rows(cells.size());
    if (threads <= 1 || cells.size() <= 1) {
        for (std::size_t k = 0; k < cells.size(); ++k) rows[k] = run_cell(cfg, tf, cells[k], log);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) return;
            try {
                rows[k] = run_cell(cfg, tf, cells[k], nullptr);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    for (unsigned t = 0; t < std::min<std::size_t>(threads, cells.size()); ++t)
        pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("config: top level must be an object");

    ExperimentConfig cfg;
    try {
        cfg.function = parse_function_id(doc.at("function").get<std::string>());
    } catch (const json::exception&) {
        throw config_error("function: required string field");
    }
    try {
        cfg.d = doc.at("d").get<std::int32_t>();
    } catch (const json::exception&) {
        throw config_error("d: required integer field");
    }
    if (cfg.function == TestFunctionId::F1) cfg.d = 2;

    if (doc.contains("schedule")) cfg.schedule = parse_schedule(doc["schedule"].get<std::string>());
    else if (cfg.function != TestFunctionId::F1)
        throw config_error("schedule: required for f2/f3/f4");
    if (doc.contains("lambda")) cfg.lambda = doc["lambda"].get<double>();
    if (doc.contains("w")) {
        if (doc["w"].is_number())
            cfg.w.assign(cfg.d, doc["w"].get<double>());
        else
            cfg.w = number_or_list<double>(doc["w"]);
    }
    if (!doc.contains("p_max")) throw config_error("p_max: required field");
    cfg.p_max_list = number_or_list<std::int32_t>(doc["p_max"]);
    if (!doc.contains("epsilon")) throw config_error("epsilon: required field");
    cfg.epsilon_list = number_or_list<double>(doc["epsilon"]);
    if (doc.contains("indicator_mode"))
        cfg.indicator_mode = parse_indicator(doc["indicator_mode"].get<std::string>());
    if (doc.contains("termination_mode"))
        cfg.termination_mode = parse_termination(doc["termination_mode"].get<std::string>());
    if (doc.contains("paired_termination"))
        cfg.paired_termination = doc["paired_termination"].get<bool>();
    if (doc.contains("samples")) cfg.samples = doc["samples"].get<std::size_t>();
    if (cfg.samples < 1) throw config_error("samples: must be >= 1");
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("max_points")) cfg.max_points = doc["max_points"].get<std::uint64_t>();
    if (doc.contains("max_level")) cfg.max_level = doc["max_level"].get<std::int32_t>();
    if (doc.contains("export_grid")) cfg.export_grid = doc["export_grid"].get<std::string>();

    for (std::int32_t p : cfg.p_max_list)
        if (p < 1 || p > kMaxDegree) throw config_error("p_max: values must be in [1, 8]");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string csv_header() {
    return "function,d,schedule,lambda,p_max,epsilon,indicator,termination,"
           "n_evals,err_linf,err_l2,err_integral_abs,termination_reason";
}

std::string to_csv_row(const ResultRow& row) {
    std::ostringstream out;
    out << row.function << ',' << row.d << ',' << row.schedule << ','
        << (row.schedule.empty() ? "" : fmt_real(row.lambda)) << ',' << row.p_max << ','
        << fmt_real(row.epsilon) << ',' << row.indicator << ',' << row.termination << ','
        << row.n_evals << ',' << fmt_real(row.err_linf) << ',' << fmt_real(row.err_l2) << ','
        << fmt_real(row.err_integral_abs) << ',' << row.termination_reason;
    return out.str();
}

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = csv_header() + "\n";
    for (const ResultRow& row : rows) out += to_csv_row(row) + "\n";
    return out;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned threads,
                                      std::ostream* log) {
    return run_cells(config, threads, log);
}

std::vector<ResultRow> sweep(const ExperimentConfig& config, unsigned threads,
                             std::ostream* log) {
    if (config.epsilon_list.size() < 2)
        throw config_error("epsilon: a sweep needs at least two values");
    std::vector<ResultRow> rows = run_cells(config, threads, log);
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.n_evals != b.n_evals) return a.n_evals < b.n_evals;
        if (a.p_max != b.p_max) return a.p_max < b.p_max;
        if (a.epsilon != b.epsilon) return a.epsilon > b.epsilon;
        return a.termination < b.termination;
    });
    return rows;
}

std::vector<std::string> preset_names() {
    return {"fig3", "fig4", "fig6", "fig7", "table1", "table2"};
}

std::vector<ExperimentConfig> preset(const std::string& name) {
    auto base = [] {
        ExperimentConfig cfg;
        cfg.samples = 1000;
        cfg.seed = 2;
        return cfg;
    };
    std::vector<ExperimentConfig> configs;
    if (name == "fig3") {
        // f4 in d=2 with the strong geometric coefficients, both basis degrees.
        ExperimentConfig cfg = base();
        cfg.function = TestFunctionId::F4;
        cfg.d = 2;
        cfg.schedule = ScheduleKind::A;
        cfg.p_max_list = {1, 2};
        cfg.epsilon_list = {1e-6};
        configs.push_back(cfg);
    } else if (name == "fig4") {
        // The kinked-ring function, both basis degrees.
        ExperimentConfig cfg = base();
        cfg.function = TestFunctionId::F1;
        cfg.d = 2;
        cfg.p_max_list = {1, 2};
        cfg.epsilon_list = {1e-6};
        configs.push_back(cfg);
    } else if (name == "fig6") {
        // Degree comparison in d=10 across the three parametric families.
        for (TestFunctionId id : {TestFunctionId::F2, TestFunctionId::F3, TestFunctionId::F4}) {
            ExperimentConfig cfg = base();
            cfg.function = id;
            cfg.d = 10;
            cfg.schedule = ScheduleKind::B;
            cfg.p_max_list = {1, 2, 4};
            cfg.epsilon_list = {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
            configs.push_back(cfg);
        }
    } else if (name == "fig7") {
        // Classic vs modified termination in d=100.
        for (TestFunctionId id : {TestFunctionId::F3, TestFunctionId::F4}) {
            ExperimentConfig cfg = base();
            cfg.function = id;
            cfg.d = 100;
            cfg.schedule = ScheduleKind::C;
            cfg.lambda = 1.0;
            cfg.p_max_list = {1};
            cfg.epsilon_list = {1e-6};
            cfg.paired_termination = true;
            configs.push_back(cfg);
        }
    } else if (name == "table1") {
        // Dimension scaling of f4 with relative indicators, both tolerance
        // readings.
        for (std::int32_t d : {100, 200, 300, 400, 500, 600, 700}) {
            ExperimentConfig cfg = base();
            cfg.function = TestFunctionId::F4;
            cfg.d = d;
            cfg.schedule = ScheduleKind::C;
            cfg.lambda = 1.0;
            cfg.p_max_list = {2};
            cfg.epsilon_list = {1e-4, 1e-5};
            cfg.indicator_mode = IndicatorMode::Relative;
            configs.push_back(cfg);
        }
    } else if (name == "table2") {
        // Increasing dimension importance via lambda.
        for (double lambda : {1.0, 2.5, 5.0, 7.5}) {
            ExperimentConfig cfg = base();
            cfg.function = TestFunctionId::F4;
            cfg.d = 100;
            cfg.schedule = ScheduleKind::C;
            cfg.lambda = lambda;
            cfg.p_max_list = {2};
            cfg.epsilon_list = {1e-6};
            cfg.indicator_mode = IndicatorMode::Relative;
            configs.push_back(cfg);
        }
    } else {
        std::string names;
        for (const std::string& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
        throw config_error("preset: unknown name '" + name + "' (known: " + names + ")");
    }
    return configs;
}

std::string plot_script_stub() {
    return R"(#!/usr/bin/env python3
"""Plots error-vs-evaluations curves from a results CSV."""
import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "results.csv"
metric = sys.argv[2] if len(sys.argv) > 2 else "err_l2"
series = defaultdict(list)
with open(path) as fh:
    for row in csv.DictReader(fh):
        key = f'{row["function"]} d={row["d"]} p={row["p_max"]} {row["termination"]}'
        series[key].append((int(row["n_evals"]), float(row[metric])))
for key, pts in sorted(series.items()):
    pts.sort()
    plt.loglog([n for n, _ in pts], [e for _, e in pts], marker="o", label=key)
plt.xlabel("function evaluations")
plt.ylabel(metric)
plt.legend()
plt.tight_layout()
plt.savefig("results.png", dpi=150)
print("wrote results.png")
)";
}

}  // namespace hgsg
