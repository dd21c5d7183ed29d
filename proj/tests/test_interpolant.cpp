#include <doctest.h>

#include <cmath>
#include <random>

#include "hgsg/errors.hpp"
#include "hgsg/interpolant.hpp"
#include "hgsg/serialization.hpp"
#include "oracles.hpp"

using namespace hgsg;

namespace {

/// Inserts the full 1D hierarchy up to `max_level` for f, in tree order.
GridState full_grid_1d(int max_level, int p_max, const std::function<double(double)>& f) {
    GridState state(1, DegreeRule{p_max});
    std::vector<LatticePoint> frontier{LatticePoint(1)};
    while (!frontier.empty()) {
        std::vector<LatticePoint> next;
        for (const LatticePoint& p : frontier) {
            state.insert_point(p, f(p.coordinates()[0]), PointClass::Active);
            if (p.coord(0).level < max_level)
                for (LatticePoint& child : axial_children(p, 0)) next.push_back(std::move(child));
        }
        frontier = std::move(next);
    }
    return state;
}

/// Inserts the full 2D tensor hierarchy with per-dimension levels <= L.
GridState full_grid_2d(int L, int p_max, const std::function<double(double, double)>& f) {
    GridState state(2, DegreeRule{p_max});
    std::vector<LatticePoint> frontier{LatticePoint(2)};
    std::unordered_set<LatticePoint, LatticePointHash> seen{LatticePoint(2)};
    while (!frontier.empty()) {
        std::vector<LatticePoint> next;
        for (const LatticePoint& p : frontier) {
            auto x = p.coordinates();
            state.insert_point(p, f(x[0], x[1]), PointClass::Active);
            for (int dim = 0; dim < 2; ++dim) {
                if (p.coord(dim).level >= L) continue;
                for (LatticePoint& child : axial_children(p, dim))
                    if (seen.insert(child).second) next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return state;
}

}  // namespace

TEST_CASE("root-only state is constant everywhere") {
    GridState state(2, DegreeRule{1});
    state.insert_point(LatticePoint(2), 3.25, PointClass::Active);
    for (auto x : {std::vector<double>{0.5, 0.5}, {0.0, 0.0}, {1.0, 0.3}, {0.77, 1.0}})
        CHECK(state.evaluate(x) == 3.25);
    CHECK(state.integrate() == 3.25);
    CHECK(state.evaluation_count() == 1);
}

TEST_CASE("1D level-1 identity interpolation") {
    auto id = [](double x) { return x; };
    GridState state = full_grid_1d(1, 1, id);
    std::vector<double> at{0.25};
    CHECK(state.evaluate(at) == 0.25);  // 0.5 + (0 - 0.5) * 0.5
    CHECK(state.integrate() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bulk insert reproduces f at all nodes") {
    auto id = [](double x) { return x; };
    GridState state = full_grid_1d(2, 1, id);
    CHECK(state.evaluation_count() == 5);
    for (const SurplusRecord& rec : state.records()) {
        auto x = rec.point.coordinates();
        CHECK(state.evaluate(x) == doctest::Approx(rec.f_value).epsilon(1e-14));
        CHECK(state.evaluate_at(rec.point) == doctest::Approx(rec.f_value).epsilon(1e-14));
    }
}

TEST_CASE("compute_surplus matches definition and rejects duplicates") {
    GridState state(1, DegreeRule{1});
    CHECK(state.compute_surplus(LatticePoint(1), 2.0) == 2.0);  // empty interpolant
    state.insert_point(LatticePoint(1), 2.0, PointClass::Active);
    LatticePoint left = LatticePoint::from_coords({{1, 0}});
    CHECK(state.compute_surplus(left, 5.0) == 3.0);  // f(0) - f(0.5)
    state.insert_point(left, 5.0, PointClass::Active);
    CHECK_THROWS_AS(state.compute_surplus(left, 5.0), duplicate_point_error);
    CHECK_THROWS_AS(state.insert_point(left, 5.0, PointClass::Active), duplicate_point_error);
}

TEST_CASE("insert_point rejects orphans") {
    GridState state(1, DegreeRule{1});
    state.insert_point(LatticePoint(1), 1.0, PointClass::Active);
    CHECK_THROWS_AS(
        state.insert_point(LatticePoint::from_coords({{2, 1}}), 1.0, PointClass::Active),
        admissibility_error);
}

TEST_CASE("redundant points still contribute to evaluate and integrate") {
    auto id = [](double x) { return x; };
    GridState state(1, DegreeRule{1});
    state.insert_point(LatticePoint(1), id(0.5), PointClass::Active);
    state.insert_point(LatticePoint::from_coords({{1, 0}}), id(0.0), PointClass::Redundant);
    state.insert_point(LatticePoint::from_coords({{1, 2}}), id(1.0), PointClass::Redundant);
    std::vector<double> at{0.25};
    CHECK(state.evaluate(at) == 0.25);
    CHECK(state.integrate() == doctest::Approx(0.5).epsilon(1e-15));
    const auto& entry = state.index_entries()[state.find_index(
        MultiIndex::from_levels({1})).value()];
    CHECK(entry.redundant_points.size() == 2);
    CHECK(entry.active_points.empty());
}

TEST_CASE("polynomial exactness: quadratic basis reproduces x^2 beyond level 2") {
    auto sq = [](double x) { return x * x; };
    GridState state = full_grid_1d(5, 2, sq);
    for (const SurplusRecord& rec : state.records())
        if (rec.point.coord(0).level >= 3) CHECK(std::abs(rec.surplus) <= 1e-12);
}

TEST_CASE("polynomial exactness: 2D tensor analogue") {
    auto f = [](double x, double y) { return x * x * y * y; };
    GridState state = full_grid_2d(3, 2, f);
    for (const SurplusRecord& rec : state.records()) {
        const MultiIndex mi = rec.point.multi_index();
        if (mi.level(0) >= 3 || mi.level(1) >= 3) CHECK(std::abs(rec.surplus) <= 1e-12);
    }
}

TEST_CASE("evaluate agrees with brute-force record summation") {
    auto f = [](double x, double y) { return std::sin(3 * x) * (y + 0.2) + x; };
    GridState state = full_grid_2d(3, 2, f);
    std::mt19937_64 rng(7);
    for (int s = 0; s < 200; ++s) {
        std::vector<double> x{(rng() >> 11) * 0x1.0p-53, (rng() >> 11) * 0x1.0p-53};
        CHECK(state.evaluate(x) ==
              doctest::Approx(test::brute_force_evaluate(state, x)).epsilon(1e-12));
    }
    // grid nodes exercise the dead-zone paths
    for (const SurplusRecord& rec : state.records()) {
        auto x = rec.point.coordinates();
        CHECK(state.evaluate(x) == doctest::Approx(test::brute_force_evaluate(state, x))
                                       .epsilon(1e-12));
        CHECK(state.evaluate_at(rec.point) ==
              doctest::Approx(state.evaluate(x)).epsilon(1e-12));
    }
}

TEST_CASE("interpolation reproduction holds after later insertions") {
    auto f = [](double x, double y) { return 1.0 / (0.3 + x) + std::exp(-y * x); };
    GridState state = full_grid_2d(4, 3, f);
    for (const SurplusRecord& rec : state.records()) {
        auto x = rec.point.coordinates();
        CHECK(std::abs(state.evaluate(x) - rec.f_value) <= 1e-10 * (1.0 + std::abs(rec.f_value)));
    }
}

TEST_CASE("integrate equals the deterministic record sum and the dense oracle") {
    auto f = [](double x, double y) { return std::exp(x) * (1.0 + 0.5 * y); };
    GridState state = full_grid_2d(4, 2, f);

    double manual = 0.0;
    for (const SurplusRecord& rec : state.records()) manual += rec.surplus * rec.weight;
    CHECK(state.integrate() == manual);  // bitwise: same order

    auto levels = test::max_levels(state);
    double oracle = test::dense_tensor_quadrature(
        [&state](std::span<const double> x) { return state.evaluate(x); }, levels, 3);
    CHECK(std::abs(state.integrate() - oracle) <= 1e-10);
}

TEST_CASE("3D mixed-degree quadrature consistency") {
    GridState state(3, DegreeRule{3});
    auto f = [](std::span<const double> x) {
        return std::cos(x[0]) + x[1] * x[1] * (x[2] + 0.3);
    };
    // a small adaptive-ish hand-built downward-closed set
    std::vector<LatticePoint> frontier{LatticePoint(3)};
    std::unordered_set<LatticePoint, LatticePointHash> seen{LatticePoint(3)};
    while (!frontier.empty()) {
        std::vector<LatticePoint> next;
        for (const LatticePoint& p : frontier) {
            state.insert_point(p, f(p.coordinates()), PointClass::Active);
            for (int dim = 0; dim < 3; ++dim) {
                if (p.multi_index().level_sum() >= 3 || p.coord(dim).level >= 2) continue;
                for (LatticePoint& child : axial_children(p, dim))
                    if (seen.insert(child).second) next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    auto levels = test::max_levels(state);
    double oracle = test::dense_tensor_quadrature(
        [&state](std::span<const double> x) { return state.evaluate(x); }, levels, 3);
    CHECK(std::abs(state.integrate() - oracle) <= 1e-10);
}

TEST_CASE("serialization round-trips exactly") {
    auto f = [](double x, double y) { return std::sin(x + 1) * y + 0.25; };
    GridState state = full_grid_2d(3, 2, f);
    state.set_index_status(0, IndexStatus::Old);
    state.set_index_status(1, IndexStatus::Discarded);

    std::string text = serialize_grid(state);
    GridState loaded = deserialize_grid(text);
    CHECK(serialize_grid(loaded) == text);  // byte-identical re-dump

    CHECK(loaded.evaluation_count() == state.evaluation_count());
    CHECK(loaded.integrate() == state.integrate());
    std::mt19937_64 rng(11);
    for (int s = 0; s < 100; ++s) {
        std::vector<double> x{(rng() >> 11) * 0x1.0p-53, (rng() >> 11) * 0x1.0p-53};
        CHECK(loaded.evaluate(x) == state.evaluate(x));
    }
    CHECK(loaded.index_entries()[0].status == IndexStatus::Old);
    CHECK(loaded.index_entries()[1].status == IndexStatus::Discarded);
}

TEST_CASE("surplus-threshold pruning shifts the L1 error by at most eps per record") {
    // Drop every record with |v*w| < eps from a converged linear state and
    // compare interpolants; the L1 gap is bounded by eps times the number of
    // dropped records.
    auto f = [](double x, double y) { return std::exp(-3.0 * std::abs(x - 0.4)) * (1 + y); };
    GridState state = full_grid_2d(4, 1, f);
    const double eps = 1e-3;

    std::vector<const SurplusRecord*> kept, dropped;
    for (const SurplusRecord& rec : state.records())
        (std::abs(rec.surplus * rec.weight) < eps ? dropped : kept).push_back(&rec);
    REQUIRE(!dropped.empty());

    auto pruned_eval = [&kept, &state](std::span<const double> x) {
        double acc = 0.0;
        for (const SurplusRecord* rec : kept)
            acc += rec->surplus * eval_nd(rec->point, state.rule(), x);
        return acc;
    };
    auto levels = test::max_levels(state);
    double l1_gap = test::dense_tensor_quadrature(
        [&](std::span<const double> x) {
            return std::abs(state.evaluate(x) - pruned_eval(x));
        },
        levels, 4);
    CHECK(l1_gap <= eps * static_cast<double>(dropped.size()) * (1.0 + 1e-12));
}
