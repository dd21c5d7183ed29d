#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hgsg/basis.hpp"
#include "hgsg/lattice.hpp"

namespace hgsg {

enum class PointClass : std::uint8_t { Active, Redundant };
enum class IndexStatus : std::uint8_t { Active, Old, Discarded };

/// One stored grid point with its hierarchical surplus and quadrature weight.
struct SurplusRecord {
    LatticePoint point;
    double f_value = 0.0;
    double surplus = 0.0;  // f_value minus the interpolant at creation time
    double weight = 0.0;   // tensor basis volume
    PointClass cls = PointClass::Active;
    std::uint32_t index_id = 0;  // creation-order id of the owning multi-index

    /// Per-dimension basis factor, resolved at insertion for fast evaluation.
    struct Factor {
        std::int32_t dim = 0;
        std::int32_t degree = 0;
        double x = 0.5;
        double h = 0.5;
        double denom = 1.0;
        std::array<double, kMaxDegree> nodes{};
    };
    std::vector<Factor> factors;  // non-root dimensions only, sorted by dim

    /// Tensor basis value at x (x must already lie in every factor's support
    /// test is still applied, so arbitrary x is safe).
    double basis_value(std::span<const double> x) const;
};

/// The evolving sparse-grid approximation. Single writer; reads (evaluate,
/// integrate) may run concurrently between mutations.
class GridState {
public:
    GridState(std::int32_t dimension, DegreeRule rule);

    std::int32_t dimension() const { return dim_; }
    const DegreeRule& rule() const { return rule_; }

    /// Interpolant value at x: sum of surplus * basis over stored points.
    /// Only points whose support can contain x are touched (one candidate
    /// per created multi-index).
    double evaluate(std::span<const double> x) const;

    /// Interpolant value at a lattice point. Same sum as evaluate restricted
    /// to the ancestor indices (every other term vanishes exactly there).
    double evaluate_at(const LatticePoint& p) const;

    /// Integral over [0,1]^d: sum of surplus * weight, in insertion order.
    double integrate() const;

    /// Surplus the point would get if inserted now. Throws
    /// duplicate_point_error if already stored.
    double compute_surplus(const LatticePoint& p, double f_value) const;

    /// Evaluates the surplus and weight, stores the record, and updates the
    /// owning index partitions. Throws admissibility_error /
    /// duplicate_point_error.
    const SurplusRecord& insert_point(const LatticePoint& p, double f_value, PointClass cls);

    bool contains(const LatticePoint& p) const;
    std::uint64_t evaluation_count() const { return records_.size(); }
    const std::vector<SurplusRecord>& records() const { return records_; }

    /// Signed sum v*w of the root record, when stored.
    std::optional<double> root_vw() const;

    // ---- multi-index registry -------------------------------------------

    struct IndexEntry {
        MultiIndex index;
        IndexStatus status = IndexStatus::Active;
        std::vector<std::uint32_t> all_points;        // record ids, insertion order
        std::vector<std::uint32_t> active_points;     // gamma >= eps
        std::vector<std::uint32_t> redundant_points;  // gamma < eps
        double signed_vw_sum = 0.0;                   // sum of v*w over all_points
    };

    const std::vector<IndexEntry>& index_entries() const { return entries_; }
    std::optional<std::uint32_t> find_index(const MultiIndex& i) const;
    bool has_index(const MultiIndex& i) const { return find_index(i).has_value(); }

    /// Registers the index if new (initial status Active); returns its id.
    std::uint32_t ensure_index(const MultiIndex& i);
    void set_index_status(std::uint32_t id, IndexStatus status);

    /// Used by deserialization: store a record with a precomputed surplus and
    /// weight instead of re-deriving them.
    const SurplusRecord& insert_raw(const LatticePoint& p, double f_value, double surplus,
                                    double weight, PointClass cls);

private:
    struct PosKeyHash {
        std::size_t operator()(const std::vector<std::int64_t>& key) const;
    };
    struct EntryIndexData {
        std::unordered_map<std::vector<std::int64_t>, std::uint32_t, PosKeyHash> by_position;
    };

    const SurplusRecord& insert_impl(const LatticePoint& p, double f_value,
                                     std::optional<double> surplus, std::optional<double> weight,
                                     PointClass cls);
    double record_value_at(const SurplusRecord& rec, std::span<const double> x) const;

    std::int32_t dim_;
    DegreeRule rule_;
    std::vector<SurplusRecord> records_;
    std::vector<IndexEntry> entries_;
    std::vector<EntryIndexData> entry_data_;
    std::unordered_map<MultiIndex, std::uint32_t, MultiIndexHash> index_lookup_;
    std::optional<std::uint32_t> root_record_;
};

}  // namespace hgsg
