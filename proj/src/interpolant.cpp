#include "hgsg/interpolant.hpp"

#include <cmath>
#include <stdexcept>

#include "hgsg/errors.hpp"

namespace hgsg {

namespace {

/// Position of the level-`level` basis whose open support contains x, or
/// nothing when x sits on a dead node of that level (an even grid point,
/// or the midpoint at level 1).
std::optional<std::int64_t> covering_position(std::int32_t level, double x) {
    if (level == 0) return 0;
    if (level == 1) {
        if (x < 0.5) return 0;
        if (x > 0.5) return 2;
        return std::nullopt;
    }
    double t = std::ldexp(x, level);  // exact scaling
    auto k = static_cast<std::int64_t>(t);
    if (static_cast<double>(k) == t) return (k % 2 == 1) ? std::optional(k) : std::nullopt;
    return (k % 2 == 1) ? k : k + 1;
}

/// covering_position for a coordinate known exactly as pos * 2^-from_level.
/// `level` < from_level, pos odd (or the level-1 boundary encoding).
std::int64_t covering_position_exact(std::int32_t level, std::int32_t from_level,
                                     std::int64_t pos) {
    if (level == 1) return pos < (std::int64_t{1} << (from_level - 1)) ? 0 : 2;
    std::int64_t k = pos >> (from_level - level);  // strictly inside (k, k+1): pos is odd
    return (k % 2 == 1) ? k : k + 1;
}

double factor_value(const SurplusRecord::Factor& f, double xi) {
    double t = xi - f.x;
    if (std::abs(t) >= f.h) return 0.0;
    if (f.degree == 1) return 1.0 - std::abs(t) / f.h;
    double num = 1.0;
    for (std::int32_t k = 0; k < f.degree; ++k) num *= xi - f.nodes[k];
    return num / f.denom;
}

}  // namespace

double SurplusRecord::basis_value(std::span<const double> x) const {
    double prod = 1.0;
    for (const Factor& f : factors) {
        prod *= factor_value(f, x[f.dim]);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

std::size_t GridState::PosKeyHash::operator()(const std::vector<std::int64_t>& key) const {
    std::size_t h = key.size();
    for (std::int64_t v : key)
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

GridState::GridState(std::int32_t dimension, DegreeRule rule) : dim_(dimension), rule_(rule) {
    if (dimension < 1) throw std::invalid_argument("GridState: dimension must be >= 1");
    validate_degree_rule(rule);
}

std::optional<std::uint32_t> GridState::find_index(const MultiIndex& i) const {
    auto it = index_lookup_.find(i);
    if (it == index_lookup_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t GridState::ensure_index(const MultiIndex& i) {
    if (i.dimension() != dim_) throw std::invalid_argument("ensure_index: dimension mismatch");
    auto it = index_lookup_.find(i);
    if (it != index_lookup_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(entries_.size());
    entries_.push_back(IndexEntry{i, IndexStatus::Active, {}, {}, {}, 0.0});
    entry_data_.emplace_back();
    index_lookup_.emplace(i, id);
    return id;
}

void GridState::set_index_status(std::uint32_t id, IndexStatus status) {
    if (id >= entries_.size()) throw state_error("set_index_status: no such index");
    entries_[id].status = status;
}

bool GridState::contains(const LatticePoint& p) const {
    auto id = find_index(p.multi_index());
    if (!id) return false;
    std::vector<std::int64_t> key;
    key.reserve(p.nonroot().size());
    for (const auto& [d, c] : p.nonroot()) {
        (void)d;
        key.push_back(c.pos);
    }
    return entry_data_[*id].by_position.contains(key);
}

std::optional<double> GridState::root_vw() const {
    if (!root_record_) return std::nullopt;
    const SurplusRecord& rec = records_[*root_record_];
    return rec.surplus * rec.weight;
}

double GridState::record_value_at(const SurplusRecord& rec, std::span<const double> x) const {
    return rec.surplus * rec.basis_value(x);
}

double GridState::evaluate(std::span<const double> x) const {
    if (static_cast<std::int32_t>(x.size()) != dim_)
        throw std::invalid_argument("evaluate: dimension mismatch");
    double acc = 0.0;
    std::vector<std::int64_t> key;
    for (std::size_t id = 0; id < entries_.size(); ++id) {
        const IndexEntry& e = entries_[id];
        key.clear();
        bool dead = false;
        for (const auto& [d, l] : e.index.nonzero()) {
            auto pos = covering_position(l, x[d]);
            if (!pos) {
                dead = true;
                break;
            }
            key.push_back(*pos);
        }
        if (dead) continue;
        const auto& map = entry_data_[id].by_position;
        auto it = map.find(key);
        if (it == map.end()) continue;
        acc += record_value_at(records_[it->second], x);
    }
    return acc;
}

double GridState::evaluate_at(const LatticePoint& p) const {
    if (p.dimension() != dim_) throw std::invalid_argument("evaluate_at: dimension mismatch");
    const auto& nz = p.nonroot();
    const auto n = nz.size();
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k) xs[k] = coordinate_1d(nz[k].second);

    // Every stored basis that is nonzero at p belongs to an index
    // componentwise <= p's index; walk that (small) downset.
    std::vector<std::int32_t> levels(n, 0);
    std::vector<std::pair<std::int32_t, std::int32_t>> mi_nz;
    std::vector<std::int64_t> key;
    double acc = 0.0;
    while (true) {
        mi_nz.clear();
        key.clear();
        for (std::size_t k = 0; k < n; ++k) {
            if (levels[k] == 0) continue;
            mi_nz.emplace_back(nz[k].first, levels[k]);
            key.push_back(levels[k] == nz[k].second.level
                              ? nz[k].second.pos
                              : covering_position_exact(levels[k], nz[k].second.level,
                                                        nz[k].second.pos));
        }
        if (auto id = find_index(MultiIndex::from_nonzero(dim_, mi_nz))) {
            const auto& map = entry_data_[*id].by_position;
            auto it = map.find(key);
            if (it != map.end()) {
                const SurplusRecord& rec = records_[it->second];
                double prod = 1.0;
                for (const SurplusRecord::Factor& f : rec.factors) {
                    // factors are sorted by dim, a subset of p's non-root dims
                    std::size_t k = 0;
                    while (nz[k].first != f.dim) ++k;
                    prod *= factor_value(f, xs[k]);
                    if (prod == 0.0) break;
                }
                acc += rec.surplus * prod;
            }
        }
        // odometer over the per-dimension levels
        std::size_t k = 0;
        while (k < n) {
            if (levels[k] < nz[k].second.level) {
                ++levels[k];
                break;
            }
            levels[k] = 0;
            ++k;
        }
        if (k == n) break;  // for the root point the first pass is the only one
    }
    return acc;
}

double GridState::integrate() const {
    double acc = 0.0;
    for (const SurplusRecord& rec : records_) acc += rec.surplus * rec.weight;
    return acc;
}

double GridState::compute_surplus(const LatticePoint& p, double f_value) const {
    if (contains(p)) throw duplicate_point_error("compute_surplus: point already stored");
    return f_value - evaluate_at(p);
}

const SurplusRecord& GridState::insert_point(const LatticePoint& p, double f_value,
                                             PointClass cls) {
    return insert_impl(p, f_value, std::nullopt, std::nullopt, cls);
}

const SurplusRecord& GridState::insert_raw(const LatticePoint& p, double f_value, double surplus,
                                           double weight, PointClass cls) {
    return insert_impl(p, f_value, surplus, weight, cls);
}

const SurplusRecord& GridState::insert_impl(const LatticePoint& p, double f_value,
                                            std::optional<double> surplus,
                                            std::optional<double> weight, PointClass cls) {
    if (p.dimension() != dim_) throw std::invalid_argument("insert_point: dimension mismatch");
    if (contains(p)) throw duplicate_point_error("insert_point: point already stored");
    if (!is_admissible_point(p, [this](const LatticePoint& q) { return contains(q); }))
        throw admissibility_error("insert_point: no hierarchical parent stored");

    double v = surplus ? *surplus : f_value - evaluate_at(p);
    double w = weight ? *weight : volume_nd(p, rule_);

    std::uint32_t index_id = ensure_index(p.multi_index());
    auto rec_id = static_cast<std::uint32_t>(records_.size());

    SurplusRecord rec;
    rec.point = p;
    rec.f_value = f_value;
    rec.surplus = v;
    rec.weight = w;
    rec.cls = cls;
    rec.index_id = index_id;
    rec.factors.reserve(p.nonroot().size());
    std::vector<std::int64_t> key;
    key.reserve(p.nonroot().size());
    for (const auto& [d, c] : p.nonroot()) {
        BasisSpec spec = make_basis(c, rule_);
        SurplusRecord::Factor f;
        f.dim = d;
        f.degree = spec.degree;
        f.x = spec.x;
        f.h = spec.h;
        f.denom = spec.denom;
        for (std::size_t k = 0; k < spec.nodes.size() && k < f.nodes.size(); ++k)
            f.nodes[k] = spec.nodes[k];
        rec.factors.push_back(f);
        key.push_back(c.pos);
    }
    records_.push_back(std::move(rec));

    IndexEntry& entry = entries_[index_id];
    entry.all_points.push_back(rec_id);
    (cls == PointClass::Active ? entry.active_points : entry.redundant_points).push_back(rec_id);
    entry.signed_vw_sum += v * w;
    entry_data_[index_id].by_position.emplace(std::move(key), rec_id);
    if (p.nonroot().empty()) root_record_ = rec_id;
    return records_.back();
}

}  // namespace hgsg
