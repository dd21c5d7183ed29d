#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hgsg/interpolant.hpp"

namespace hgsg {

/// Deterministic total function on [0,1]^d.
using Evaluator = std::function<double(std::span<const double>)>;

enum class IndicatorMode : std::uint8_t { Absolute, Relative };
enum class TerminationMode : std::uint8_t { Classic, Modified };

struct AdaptiveConfig {
    double epsilon = 1e-6;
    IndicatorMode indicator_mode = IndicatorMode::Absolute;
    TerminationMode termination_mode = TerminationMode::Modified;
    DegreeRule rule{1};
    std::uint64_t max_points = 2'000'000;
    std::int32_t max_level = 30;
    std::uint64_t seed = 0;           // reserved for randomized validation harnesses
    bool validate_invariants = false;  // recheck the incremental error sum each step
};

enum class TerminationReason : std::uint8_t { Converged, Capped };

struct RefineStep {
    MultiIndex selected;
    double error_at_selection = 0.0;  // r_i of the selected index
    std::uint32_t points_created = 0;
};

struct RefineReport {
    std::uint64_t evaluations = 0;
    double final_error = 0.0;
    TerminationReason reason = TerminationReason::Converged;
    std::vector<RefineStep> steps;
};

struct CreateGridReport {
    std::uint32_t index_id = 0;
    std::uint32_t points_created = 0;
    double index_error = 0.0;
};

/// Local refinement indicator gamma = |v*w|, optionally normalized by the
/// root contribution (falls back to absolute while the root term is zero or
/// missing).
double point_error(const SurplusRecord& rec, const GridState& state, IndicatorMode mode);

/// Index indicator r_i = |sum of v*w| over every stored point of i.
/// Throws state_error if the index was never created.
double index_error(const GridState& state, const MultiIndex& i, IndicatorMode mode);

/// Global indicator r: sum of r_i over the active index set (0 when empty).
double global_error(const GridState& state, IndicatorMode mode);

/// Creates the points of index i: axial children of the backward
/// neighbours' active points, deduplicated, admissibility-checked, evaluated
/// once each, and classified by gamma >= eps. The root index contributes the
/// single midpoint. Requires i admissible w.r.t. the old set.
CreateGridReport create_grid(GridState& state, const MultiIndex& i, const Evaluator& f,
                             double epsilon, IndicatorMode mode = IndicatorMode::Absolute);

/// The full driver: greedy index selection over the active set with local
/// point refinement, until the global indicator drops to epsilon or a cap is
/// hit. Ties in the argmax go to the earliest-created index.
std::pair<GridState, RefineReport> run(const Evaluator& f, std::int32_t dimension,
                                       const AdaptiveConfig& config);

}  // namespace hgsg
