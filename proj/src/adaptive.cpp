#include "hgsg/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "hgsg/errors.hpp"

namespace hgsg {

namespace {

/// Normalization term for relative indicators; 0 disables (absolute fallback).
double relative_scale(const GridState& state, IndicatorMode mode) {
    if (mode != IndicatorMode::Relative) return 0.0;
    auto vw = state.root_vw();
    if (!vw || *vw == 0.0) return 0.0;
    return std::abs(*vw);
}

double evaluate_with_context(const Evaluator& f, const LatticePoint& p,
                             std::vector<double>& scratch) {
    for (const auto& [d, c] : p.nonroot()) scratch[d] = coordinate_1d(c);
    double value;
    try {
        value = f(scratch);
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "evaluator failed at point (";
        for (std::size_t k = 0; k < scratch.size(); ++k)
            msg << (k ? "," : "") << scratch[k];
        msg << "): " << e.what();
        for (const auto& [d, c] : p.nonroot()) scratch[d] = 0.5;
        throw evaluator_error(msg.str());
    }
    for (const auto& [d, c] : p.nonroot()) scratch[d] = 0.5;
    return value;
}

}  // namespace

double point_error(const SurplusRecord& rec, const GridState& state, IndicatorMode mode) {
    double gamma = std::abs(rec.surplus * rec.weight);
    double scale = relative_scale(state, mode);
    return scale > 0.0 ? gamma / scale : gamma;
}

double index_error(const GridState& state, const MultiIndex& i, IndicatorMode mode) {
    auto id = state.find_index(i);
    if (!id) throw state_error("index_error: index was never created");
    double r = std::abs(state.index_entries()[*id].signed_vw_sum);
    double scale = relative_scale(state, mode);
    return scale > 0.0 ? r / scale : r;
}

double global_error(const GridState& state, IndicatorMode mode) {
    double r = 0.0;
    for (const auto& entry : state.index_entries())
        if (entry.status == IndexStatus::Active)
            r += index_error(state, entry.index, mode);
    return r;
}

CreateGridReport create_grid(GridState& state, const MultiIndex& i, const Evaluator& f,
                             double epsilon, IndicatorMode mode) {
    if (state.has_index(i)) throw state_error("create_grid: index already created");
    const bool is_root = i.nonzero().empty();
    if (!is_root) {
        auto in_old = [&state](const MultiIndex& j) {
            auto id = state.find_index(j);
            return id && state.index_entries()[*id].status == IndexStatus::Old;
        };
        if (!is_admissible_index(i, in_old))
            throw admissibility_error("create_grid: index has backward neighbours outside the old set");
    }

    CreateGridReport report;
    std::vector<double> scratch(state.dimension(), 0.5);

    // Collect candidates first: axial children (in each refined dimension) of
    // the backward neighbours' active points, deduplicated across sources.
    std::vector<LatticePoint> candidates;
    if (is_root) {
        candidates.emplace_back(state.dimension());
    } else {
        std::unordered_set<LatticePoint, LatticePointHash> seen;
        for (const auto& [dim, level] : i.nonzero()) {
            (void)level;
            auto parent_id = state.find_index(i.decremented(dim));
            if (!parent_id) continue;
            const auto& parent_entry = state.index_entries()[*parent_id];
            for (std::uint32_t rec_id : parent_entry.active_points) {
                const LatticePoint& source = state.records()[rec_id].point;
                for (LatticePoint& child : axial_children(source, dim))
                    if (seen.insert(child).second) candidates.push_back(std::move(child));
            }
        }
    }

    report.index_id = state.ensure_index(i);
    auto created = [&state](const LatticePoint& q) { return state.contains(q); };
    for (const LatticePoint& p : candidates) {
        if (!is_admissible_point(p, created)) continue;
        double f_value = evaluate_with_context(f, p, scratch);
        double v = state.compute_surplus(p, f_value);
        double w = volume_nd(p, state.rule());
        double gamma = std::abs(v * w);
        double scale = relative_scale(state, mode);
        if (mode == IndicatorMode::Relative && scale == 0.0 && p.nonroot().empty())
            scale = gamma;  // the root normalizes itself: gamma becomes 1
        if (scale > 0.0) gamma /= scale;
        state.insert_raw(p, f_value, v, w,
                         gamma >= epsilon ? PointClass::Active : PointClass::Redundant);
        ++report.points_created;
    }
    report.index_error = index_error(state, i, mode);
    return report;
}

std::pair<GridState, RefineReport> run(const Evaluator& f, std::int32_t dimension,
                                       const AdaptiveConfig& config) {
    if (config.epsilon <= 0.0) throw std::invalid_argument("run: epsilon must be positive");
    if (config.max_points == 0 || config.max_level < 1)
        throw std::invalid_argument("run: caps must be positive");
    validate_degree_rule(config.rule);

    GridState state(dimension, config.rule);
    RefineReport report;

    // Bootstrap: the level-0 index is the single midpoint.
    MultiIndex root(dimension);
    CreateGridReport seed = create_grid(state, root, f, config.epsilon, config.indicator_mode);
    std::vector<std::uint32_t> active{seed.index_id};
    double r = seed.index_error;

    const bool classic = config.termination_mode == TerminationMode::Classic;
    bool capped = false;

    while (r > config.epsilon && !active.empty()) {
        if (state.evaluation_count() >= config.max_points) {
            capped = true;
            break;
        }
        // argmax r_i; ties go to the earliest-created index (stable order).
        std::size_t best = 0;
        double best_r = -1.0;
        for (std::size_t k = 0; k < active.size(); ++k) {
            const auto& entry = state.index_entries()[active[k]];
            double rk = index_error(state, entry.index, config.indicator_mode);
            if (rk > best_r) {
                best_r = rk;
                best = k;
            }
        }
        std::uint32_t selected_id = active[best];
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
        MultiIndex selected = state.index_entries()[selected_id].index;
        state.set_index_status(selected_id, IndexStatus::Old);
        r -= best_r;

        RefineStep step{selected, best_r, 0};
        for (std::int32_t k = 0; k < dimension && !capped; ++k) {
            MultiIndex neighbour = selected.incremented(k);
            if (state.has_index(neighbour)) continue;
            auto in_old = [&state](const MultiIndex& j) {
                auto id = state.find_index(j);
                return id && state.index_entries()[*id].status == IndexStatus::Old;
            };
            if (!is_admissible_index(neighbour, in_old)) continue;
            if (neighbour.level(k) > config.max_level) {
                capped = true;
                break;
            }
            CreateGridReport cg =
                create_grid(state, neighbour, f, config.epsilon, config.indicator_mode);
            step.points_created += cg.points_created;
            if (classic || cg.index_error >= config.epsilon) {
                active.push_back(cg.index_id);
                r += cg.index_error;
            } else {
                state.set_index_status(cg.index_id, IndexStatus::Discarded);
            }
            if (state.evaluation_count() >= config.max_points) capped = true;
        }
        report.steps.push_back(std::move(step));

        if (config.validate_invariants) {
            double recomputed = global_error(state, config.indicator_mode);
            if (std::abs(r - recomputed) > 1e-12 * std::max(1.0, std::abs(recomputed)))
                throw state_error("run: incremental error indicator drifted from recomputation");
            r = recomputed;
        }
        if (capped) break;
    }

    report.evaluations = state.evaluation_count();
    report.final_error = global_error(state, config.indicator_mode);
    report.reason = capped ? TerminationReason::Capped : TerminationReason::Converged;
    return {std::move(state), std::move(report)};
}

}  // namespace hgsg
