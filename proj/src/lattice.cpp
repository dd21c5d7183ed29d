#include "hgsg/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hgsg {

namespace {

constexpr std::int32_t kMaxLevel = 62;  // pos must fit in int64

void check_level(std::int32_t level) {
    if (level < 0 || level > kMaxLevel)
        throw std::out_of_range("lattice level out of range: " + std::to_string(level));
}

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

double coordinate_1d(Coord1D c) {
    if (c.level == 0) return 0.5;
    return std::ldexp(static_cast<double>(c.pos), -c.level);
}

double support_halfwidth(std::int32_t level) {
    return std::ldexp(1.0, -std::max(level, std::int32_t{1}));
}

Coord1D canonicalize_1d(std::int32_t level, std::int64_t pos) {
    check_level(level);
    if (pos < 0 || pos > (std::int64_t{1} << level))
        throw std::out_of_range("lattice position out of range: " + std::to_string(pos) +
                                " at level " + std::to_string(level));
    while (level > 0 && pos % 2 == 0) {
        pos /= 2;
        --level;
    }
    if (level == 0) return pos == 0 ? Coord1D{1, 0} : Coord1D{1, 2};  // x = 0 or x = 1
    if (level == 1) return Coord1D{0, 0};                             // pos 1 is the midpoint
    return Coord1D{level, pos};
}

std::vector<Coord1D> children_1d(Coord1D c) {
    if (c.level == 0) return {Coord1D{1, 0}, Coord1D{1, 2}};
    if (c.level == 1) return {c.pos == 0 ? Coord1D{2, 1} : Coord1D{2, 3}};
    return {Coord1D{c.level + 1, 2 * c.pos - 1}, Coord1D{c.level + 1, 2 * c.pos + 1}};
}

std::optional<Coord1D> direct_parent_1d(Coord1D c) {
    if (c.level == 0) return std::nullopt;
    if (c.level == 1) return Coord1D{0, 0};
    // Exactly one support endpoint is canonical at one level coarser; the
    // other reduces further up the tree.
    Coord1D lo = canonicalize_1d(c.level, c.pos - 1);
    Coord1D hi = canonicalize_1d(c.level, c.pos + 1);
    return lo.level == c.level - 1 ? lo : hi;
}

std::vector<Coord1D> ancestor_chain_1d(Coord1D c) {
    if (c.level == 0) return {};
    const double x = coordinate_1d(c);
    struct Entry {
        Coord1D coord;
        double dist;
    };
    std::vector<Entry> entries;
    auto push = [&](Coord1D e) {
        if (e == c) return;
        for (const Entry& seen : entries)
            if (seen.coord == e) return;
        entries.push_back({e, std::abs(coordinate_1d(e) - x)});
    };
    if (c.level == 1) {
        // Boundary point: only the midpoint and the opposite corner remain.
        push(Coord1D{0, 0});
        push(c.pos == 0 ? Coord1D{1, 2} : Coord1D{1, 0});
    } else {
        // Walk the nested dyadic cells containing x, from the support cell
        // [x-h, x+h] out to [0, 1]; each scale contributes one new endpoint.
        for (std::int32_t s = c.level - 1; s >= 0; --s) {
            std::int64_t k = c.pos >> (c.level - s);  // floor(x * 2^s); never exact (pos odd)
            push(canonicalize_1d(s, k));
            push(canonicalize_1d(s, k + 1));
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.coord.level < b.coord.level;
    });
    std::vector<Coord1D> chain;
    chain.reserve(entries.size());
    for (const Entry& e : entries) chain.push_back(e.coord);
    return chain;
}

MultiIndex MultiIndex::from_levels(const std::vector<std::int32_t>& levels) {
    MultiIndex mi(static_cast<std::int32_t>(levels.size()));
    for (std::int32_t k = 0; k < mi.dim_; ++k) {
        check_level(levels[k]);
        if (levels[k] > 0) mi.nz_.emplace_back(k, levels[k]);
    }
    return mi;
}

MultiIndex MultiIndex::from_nonzero(std::int32_t dimension,
                                    std::vector<std::pair<std::int32_t, std::int32_t>> nz) {
    MultiIndex mi(dimension);
    std::int32_t prev = -1;
    for (const auto& [d, l] : nz) {
        if (d <= prev || d >= dimension || l < 1)
            throw std::invalid_argument("from_nonzero: entries must be sorted with levels >= 1");
        prev = d;
    }
    mi.nz_ = std::move(nz);
    return mi;
}

std::int32_t MultiIndex::level(std::int32_t dim) const {
    for (const auto& [d, l] : nz_)
        if (d == dim) return l;
    return 0;
}

std::int64_t MultiIndex::level_sum() const {
    std::int64_t s = 0;
    for (const auto& [d, l] : nz_) s += l;
    return s;
}

std::vector<std::int32_t> MultiIndex::levels() const {
    std::vector<std::int32_t> out(dim_, 0);
    for (const auto& [d, l] : nz_) out[d] = l;
    return out;
}

MultiIndex MultiIndex::with_level(std::int32_t dim, std::int32_t level) const {
    if (dim < 0 || dim >= dim_) throw std::out_of_range("multi-index dimension out of range");
    check_level(level);
    MultiIndex out(dim_);
    out.nz_.reserve(nz_.size() + 1);
    bool placed = false;
    for (const auto& entry : nz_) {
        if (entry.first == dim) {
            if (level > 0) out.nz_.emplace_back(dim, level);
            placed = true;
        } else {
            if (!placed && entry.first > dim) {
                if (level > 0) out.nz_.emplace_back(dim, level);
                placed = true;
            }
            out.nz_.push_back(entry);
        }
    }
    if (!placed && level > 0) out.nz_.emplace_back(dim, level);
    return out;
}

MultiIndex MultiIndex::decremented(std::int32_t dim) const {
    std::int32_t l = level(dim);
    if (l == 0) throw std::out_of_range("cannot decrement a level-0 entry");
    return with_level(dim, l - 1);
}

bool componentwise_leq(const MultiIndex& a, const MultiIndex& b) {
    if (a.dimension() != b.dimension()) return false;
    for (const auto& [d, l] : a.nonzero())
        if (l > b.level(d)) return false;
    return true;
}

LatticePoint LatticePoint::from_coords(const std::vector<Coord1D>& coords) {
    LatticePoint p(static_cast<std::int32_t>(coords.size()));
    for (std::int32_t k = 0; k < p.dim_; ++k)
        if (!coords[k].is_root()) p.nz_.emplace_back(k, coords[k]);
    return p;
}

Coord1D LatticePoint::coord(std::int32_t dim) const {
    for (const auto& [d, c] : nz_)
        if (d == dim) return c;
    return Coord1D{0, 0};
}

std::vector<Coord1D> LatticePoint::coords() const {
    std::vector<Coord1D> out(dim_, Coord1D{0, 0});
    for (const auto& [d, c] : nz_) out[d] = c;
    return out;
}

MultiIndex LatticePoint::multi_index() const {
    // nz_ is sorted by dimension and all component levels are >= 1
    std::vector<std::pair<std::int32_t, std::int32_t>> nz;
    nz.reserve(nz_.size());
    for (const auto& [d, c] : nz_) nz.emplace_back(d, c.level);
    return MultiIndex::from_nonzero(dim_, std::move(nz));
}

LatticePoint LatticePoint::with_coord(std::int32_t dim, Coord1D c) const {
    if (dim < 0 || dim >= dim_) throw std::out_of_range("lattice point dimension out of range");
    LatticePoint out(dim_);
    out.nz_.reserve(nz_.size() + 1);
    bool placed = false;
    for (const auto& entry : nz_) {
        if (entry.first == dim) {
            if (!c.is_root()) out.nz_.emplace_back(dim, c);
            placed = true;
        } else {
            if (!placed && entry.first > dim) {
                if (!c.is_root()) out.nz_.emplace_back(dim, c);
                placed = true;
            }
            out.nz_.push_back(entry);
        }
    }
    if (!placed && !c.is_root()) out.nz_.emplace_back(dim, c);
    return out;
}

std::vector<double> LatticePoint::coordinates() const {
    std::vector<double> x(dim_, 0.5);
    for (const auto& [d, c] : nz_) x[d] = coordinate_1d(c);
    return x;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& i) const {
    std::size_t h = static_cast<std::size_t>(i.dimension());
    for (const auto& [d, l] : i.nonzero()) {
        h = hash_combine(h, static_cast<std::size_t>(d));
        h = hash_combine(h, static_cast<std::size_t>(l));
    }
    return h;
}

std::size_t LatticePointHash::operator()(const LatticePoint& p) const {
    std::size_t h = static_cast<std::size_t>(p.dimension());
    for (const auto& [d, c] : p.nonroot()) {
        h = hash_combine(h, static_cast<std::size_t>(d));
        h = hash_combine(h, static_cast<std::size_t>(c.level));
        h = hash_combine(h, static_cast<std::size_t>(c.pos));
    }
    return h;
}

std::vector<MultiIndex> forward_neighbourhood(const MultiIndex& i) {
    std::vector<MultiIndex> out;
    out.reserve(i.dimension());
    for (std::int32_t k = 0; k < i.dimension(); ++k) out.push_back(i.incremented(k));
    return out;
}

bool is_admissible_index(const MultiIndex& i,
                         const std::function<bool(const MultiIndex&)>& contains) {
    for (const auto& [d, l] : i.nonzero()) {
        (void)l;
        if (!contains(i.decremented(d))) return false;
    }
    return true;
}

bool is_admissible_index(const MultiIndex& i, const MultiIndexSet& old_set) {
    return is_admissible_index(
        i, [&old_set](const MultiIndex& j) { return old_set.contains(j); });
}

std::vector<LatticePoint> axial_children(const LatticePoint& p, std::int32_t dim) {
    if (dim < 0 || dim >= p.dimension())
        throw std::out_of_range("axial_children: dimension out of range");
    std::vector<LatticePoint> out;
    for (Coord1D child : children_1d(p.coord(dim))) out.push_back(p.with_coord(dim, child));
    return out;
}

bool is_admissible_point(const LatticePoint& p,
                         const std::function<bool(const LatticePoint&)>& created) {
    if (p.nonroot().empty()) return true;  // the root seed
    for (const auto& [d, c] : p.nonroot()) {
        std::optional<Coord1D> parent = direct_parent_1d(c);
        if (parent && created(p.with_coord(d, *parent))) return true;
    }
    return false;
}

}  // namespace hgsg
