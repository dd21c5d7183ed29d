#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

namespace hgsg {

// Hierarchical equidistant lattice on [0,1], one tree per dimension.
//
// Level layout:
//   level 0: the midpoint 0.5 (pos 0), carrying the constant basis
//   level 1: the boundary points, stored as pos 0 (-> 0.0) and pos 2 (-> 1.0)
//   level i >= 2: odd positions j, coordinate j * 2^-i
//
// Tree: the root has the two boundary points as children, each boundary point
// has one interior child, and every interior point has two. Each canonical
// point is generated exactly once. Identity is always the integer (level,pos)
// pair; coordinates are derived, never compared.

/// One lattice coordinate in canonical (reduced) form.
struct Coord1D {
    std::int32_t level = 0;
    std::int64_t pos = 0;

    bool is_root() const { return level == 0; }
    bool operator==(const Coord1D&) const = default;
};

/// Coordinate value of a canonical point; exact in binary for level <= 52.
double coordinate_1d(Coord1D c);

/// Basis half-width at a level: 0.5 at levels 0 and 1, else 2^-level.
double support_halfwidth(std::int32_t level);

/// Reduces (level, pos) with coordinate pos * 2^-level to canonical form.
/// Throws std::out_of_range unless 0 <= pos <= 2^level.
Coord1D canonicalize_1d(std::int32_t level, std::int64_t pos);

/// Children in the point tree (2 for root and interior, 1 for boundaries).
std::vector<Coord1D> children_1d(Coord1D c);

/// The unique parent under children_1d; empty for the root.
std::optional<Coord1D> direct_parent_1d(Coord1D c);

/// Endpoints of the nested dyadic intervals around c, nearest first
/// (ties resolved toward the coarser level). Empty for the root; otherwise
/// ends with the full-interval endpoints {0, 1} and contains 0.5.
std::vector<Coord1D> ancestor_chain_1d(Coord1D c);

/// Per-dimension refinement levels, stored sparsely (level-0 entries
/// are implicit). Hashable; identity is the integer form.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::int32_t dimension) : dim_(dimension) {}
    static MultiIndex from_levels(const std::vector<std::int32_t>& levels);

    /// Builds from entries already sorted by dimension with levels >= 1.
    static MultiIndex from_nonzero(std::int32_t dimension,
                                   std::vector<std::pair<std::int32_t, std::int32_t>> nz);

    std::int32_t dimension() const { return dim_; }
    std::int32_t level(std::int32_t dim) const;
    std::int64_t level_sum() const;
    std::vector<std::int32_t> levels() const;  // dense copy

    /// Non-zero entries, sorted by dimension.
    const std::vector<std::pair<std::int32_t, std::int32_t>>& nonzero() const { return nz_; }

    MultiIndex with_level(std::int32_t dim, std::int32_t level) const;
    MultiIndex incremented(std::int32_t dim) const { return with_level(dim, level(dim) + 1); }
    MultiIndex decremented(std::int32_t dim) const;

    bool operator==(const MultiIndex&) const = default;

private:
    std::int32_t dim_ = 0;
    std::vector<std::pair<std::int32_t, std::int32_t>> nz_;
};

/// True iff a <= b componentwise.
bool componentwise_leq(const MultiIndex& a, const MultiIndex& b);

/// A grid point: one canonical coordinate per dimension, stored sparsely
/// (root coordinates are implicit).
class LatticePoint {
public:
    LatticePoint() = default;
    explicit LatticePoint(std::int32_t dimension) : dim_(dimension) {}
    static LatticePoint from_coords(const std::vector<Coord1D>& coords);

    std::int32_t dimension() const { return dim_; }
    Coord1D coord(std::int32_t dim) const;
    std::vector<Coord1D> coords() const;  // dense copy
    MultiIndex multi_index() const;

    /// Non-root coordinates, sorted by dimension.
    const std::vector<std::pair<std::int32_t, Coord1D>>& nonroot() const { return nz_; }

    LatticePoint with_coord(std::int32_t dim, Coord1D c) const;

    /// Dense coordinate vector (root dimensions filled with 0.5).
    std::vector<double> coordinates() const;

    bool operator==(const LatticePoint&) const = default;

private:
    std::int32_t dim_ = 0;
    std::vector<std::pair<std::int32_t, Coord1D>> nz_;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& i) const;
};
struct LatticePointHash {
    std::size_t operator()(const LatticePoint& p) const;
};

using MultiIndexSet = std::unordered_set<MultiIndex, MultiIndexHash>;

/// The d indices i + e_k.
std::vector<MultiIndex> forward_neighbourhood(const MultiIndex& i);

/// True iff i - e_k is present for every dimension k with level >= 1.
bool is_admissible_index(const MultiIndex& i,
                         const std::function<bool(const MultiIndex&)>& contains);
bool is_admissible_index(const MultiIndex& i, const MultiIndexSet& old_set);

/// Copies of p with coords[dim] replaced by each child of coords[dim].
/// Throws std::out_of_range for a bad dimension.
std::vector<LatticePoint> axial_children(const LatticePoint& p, std::int32_t dim);

/// True iff some axial direct parent of p has been created (the root point
/// is vacuously admissible, seeding the grid).
bool is_admissible_point(const LatticePoint& p,
                         const std::function<bool(const LatticePoint&)>& created);

}  // namespace hgsg
