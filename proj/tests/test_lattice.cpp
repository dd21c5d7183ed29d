#include <doctest.h>

#include <set>
#include <stdexcept>

#include "hgsg/lattice.hpp"

using namespace hgsg;

namespace {

// All canonical coordinates up to a level, via the point tree.
std::vector<Coord1D> all_canonical(int max_level) {
    std::vector<Coord1D> out{Coord1D{0, 0}};
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k].level >= max_level) continue;
        for (Coord1D c : children_1d(out[k])) out.push_back(c);
    }
    return out;
}

}  // namespace

TEST_CASE("coordinate_1d on the canonical layout") {
    CHECK(coordinate_1d(Coord1D{0, 0}) == 0.5);
    CHECK(coordinate_1d(Coord1D{2, 1}) == 0.25);
    CHECK(coordinate_1d(Coord1D{1, 2}) == 1.0);
    CHECK(coordinate_1d(Coord1D{1, 0}) == 0.0);
    CHECK(coordinate_1d(Coord1D{3, 5}) == 0.625);
}

TEST_CASE("canonicalize_1d reduces even positions") {
    CHECK(canonicalize_1d(3, 4) == Coord1D{0, 0});  // 4/8 is the midpoint
    CHECK(canonicalize_1d(3, 2) == Coord1D{2, 1});  // 2/8 = 1/4
    CHECK(canonicalize_1d(3, 3) == Coord1D{3, 3});  // already odd
    CHECK(canonicalize_1d(3, 0) == Coord1D{1, 0});
    CHECK(canonicalize_1d(3, 8) == Coord1D{1, 2});
    CHECK(canonicalize_1d(1, 1) == Coord1D{0, 0});
    CHECK_THROWS_AS(canonicalize_1d(3, 9), std::out_of_range);
    CHECK_THROWS_AS(canonicalize_1d(3, -1), std::out_of_range);
}

TEST_CASE("canonical uniqueness: embeddings reduce to the same point") {
    for (Coord1D c : all_canonical(6)) {
        // express c on finer uniform grids and reduce back
        std::int64_t pos = c.level == 0 ? 1 : c.pos;  // midpoint is 1 * 2^-1
        std::int32_t level = c.level == 0 ? 1 : c.level;
        for (int extra = 1; extra <= 3; ++extra)
            CHECK(canonicalize_1d(level + extra, pos << extra) == c);
    }
}

TEST_CASE("children_1d follows the root/boundary/interior layout") {
    CHECK(children_1d(Coord1D{0, 0}) == std::vector<Coord1D>{{1, 0}, {1, 2}});
    CHECK(children_1d(Coord1D{1, 0}) == std::vector<Coord1D>{{2, 1}});
    CHECK(children_1d(Coord1D{1, 2}) == std::vector<Coord1D>{{2, 3}});
    CHECK(children_1d(Coord1D{2, 1}) == std::vector<Coord1D>{{3, 1}, {3, 3}});
}

TEST_CASE("tree consistency: every non-root point has exactly one parent") {
    auto points = all_canonical(7);
    for (Coord1D c : points) {
        if (c.level == 0) {
            CHECK(!direct_parent_1d(c));
            continue;
        }
        int parents = 0;
        for (Coord1D q : points)
            for (Coord1D child : children_1d(q))
                if (child == c) ++parents;
        CHECK(parents == 1);
        CHECK(direct_parent_1d(c));
        bool found = false;
        for (Coord1D child : children_1d(*direct_parent_1d(c)))
            if (child == c) found = true;
        CHECK(found);
    }
}

TEST_CASE("support separation at interior levels") {
    for (int level = 2; level <= 8; ++level) {
        double h = support_halfwidth(level);
        std::vector<double> xs;
        for (std::int64_t pos = 1; pos < (std::int64_t{1} << level); pos += 2)
            xs.push_back(coordinate_1d(Coord1D{level, pos}));
        for (std::size_t a = 0; a + 1 < xs.size(); ++a)
            CHECK(xs[a + 1] - xs[a] >= 2 * h - 1e-15);
    }
}

TEST_CASE("ancestor_chain_1d ordering") {
    // x = 0.125: nested dyadic cells give {0, 0.25}, then 0.5, then 1.
    // 0 and 0.25 tie in distance; 0 is the coarser (level 1 vs level 2).
    auto chain = ancestor_chain_1d(Coord1D{3, 1});
    REQUIRE(chain.size() == 4);
    CHECK(coordinate_1d(chain[0]) == 0.0);
    CHECK(coordinate_1d(chain[1]) == 0.25);
    CHECK(coordinate_1d(chain[2]) == 0.5);
    CHECK(coordinate_1d(chain[3]) == 1.0);

    // x = 0.25: cells give {0, 0.5} then 1. The distance tie between 0 and
    // 0.5 goes to 0.5, the coarser point (level 0 vs level 1).
    chain = ancestor_chain_1d(Coord1D{2, 1});
    REQUIRE(chain.size() == 3);
    CHECK(coordinate_1d(chain[0]) == 0.5);
    CHECK(coordinate_1d(chain[1]) == 0.0);
    CHECK(coordinate_1d(chain[2]) == 1.0);

    CHECK(ancestor_chain_1d(Coord1D{0, 0}).empty());
}

TEST_CASE("ancestor_chain_1d properties over many points") {
    for (Coord1D c : all_canonical(8)) {
        if (c.level == 0) continue;
        auto chain = ancestor_chain_1d(c);
        double x = coordinate_1d(c);
        // distances never decrease
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            CHECK(std::abs(coordinate_1d(chain[k]) - x) <=
                  std::abs(coordinate_1d(chain[k + 1]) - x) + 1e-15);
        // strictly coarser levels for interior points (a boundary point's
        // chain also carries the peer boundary), terminal landmarks present
        std::set<double> coords;
        for (Coord1D a : chain) {
            if (c.level >= 2) CHECK(a.level < c.level);
            coords.insert(coordinate_1d(a));
        }
        CHECK(coords.count(0.5) == 1);
        if (c.level >= 2) {
            CHECK(coords.count(0.0) == 1);
            CHECK(coords.count(1.0) == 1);
            // the first two entries are the support endpoints
            double h = support_halfwidth(c.level);
            std::set<double> first_two{coordinate_1d(chain[0]), coordinate_1d(chain[1])};
            CHECK(first_two == std::set<double>{x - h, x + h});
        }
    }
}

TEST_CASE("forward_neighbourhood") {
    auto n2 = forward_neighbourhood(MultiIndex::from_levels({0, 0}));
    REQUIRE(n2.size() == 2);
    CHECK(n2[0] == MultiIndex::from_levels({1, 0}));
    CHECK(n2[1] == MultiIndex::from_levels({0, 1}));

    auto n21 = forward_neighbourhood(MultiIndex::from_levels({2, 1}));
    CHECK(n21[0] == MultiIndex::from_levels({3, 1}));
    CHECK(n21[1] == MultiIndex::from_levels({2, 2}));

    auto n1 = forward_neighbourhood(MultiIndex::from_levels({3}));
    REQUIRE(n1.size() == 1);
    CHECK(n1[0] == MultiIndex::from_levels({4}));
}

TEST_CASE("is_admissible_index") {
    MultiIndexSet old_set{MultiIndex::from_levels({0, 0})};
    CHECK(is_admissible_index(MultiIndex::from_levels({1, 0}), old_set));
    old_set.insert(MultiIndex::from_levels({1, 0}));
    CHECK(!is_admissible_index(MultiIndex::from_levels({1, 1}), old_set));
    old_set.insert(MultiIndex::from_levels({0, 1}));
    CHECK(is_admissible_index(MultiIndex::from_levels({1, 1}), old_set));
}

TEST_CASE("axial_children replaces one coordinate") {
    LatticePoint root2(2);
    auto kids = axial_children(root2, 0);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].coord(0) == Coord1D{1, 0});
    CHECK(kids[0].coord(1) == Coord1D{0, 0});
    CHECK(kids[1].coord(0) == Coord1D{1, 2});

    LatticePoint p = LatticePoint::from_coords({{1, 0}, {2, 1}});
    kids = axial_children(p, 1);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0] == LatticePoint::from_coords({{1, 0}, {3, 1}}));
    CHECK(kids[1] == LatticePoint::from_coords({{1, 0}, {3, 3}}));

    LatticePoint q = LatticePoint::from_coords({{2, 1}});
    kids = axial_children(q, 0);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0] == LatticePoint::from_coords({{3, 1}}));
    CHECK(kids[1] == LatticePoint::from_coords({{3, 3}}));

    CHECK_THROWS_AS(axial_children(q, 1), std::out_of_range);
}

TEST_CASE("is_admissible_point") {
    std::unordered_set<LatticePoint, LatticePointHash> created;
    auto contains = [&created](const LatticePoint& p) { return created.contains(p); };

    LatticePoint root1(1);
    CHECK(is_admissible_point(root1, contains));  // seed, vacuously admissible
    created.insert(root1);
    CHECK(is_admissible_point(LatticePoint::from_coords({{1, 0}}), contains));
    CHECK(!is_admissible_point(LatticePoint::from_coords({{2, 1}}), contains));

    // 2D: one axial parent present is enough
    std::unordered_set<LatticePoint, LatticePointHash> created2{
        LatticePoint::from_coords({{1, 0}, {1, 0}})};
    auto contains2 = [&created2](const LatticePoint& p) { return created2.contains(p); };
    CHECK(is_admissible_point(LatticePoint::from_coords({{2, 1}, {1, 0}}), contains2));
    CHECK(!is_admissible_point(LatticePoint::from_coords({{2, 3}, {1, 0}}), contains2));
}

TEST_CASE("sparse multi-index and point accessors") {
    MultiIndex mi = MultiIndex::from_levels({0, 3, 0, 1});
    CHECK(mi.dimension() == 4);
    CHECK(mi.level(0) == 0);
    CHECK(mi.level(1) == 3);
    CHECK(mi.level_sum() == 4);
    CHECK(mi.nonzero().size() == 2);
    CHECK(mi.incremented(0).level(0) == 1);
    CHECK(mi.decremented(1) == MultiIndex::from_levels({0, 2, 0, 1}));
    CHECK_THROWS_AS(mi.decremented(0), std::out_of_range);
    CHECK(componentwise_leq(MultiIndex::from_levels({0, 2, 0, 1}), mi));
    CHECK(!componentwise_leq(MultiIndex::from_levels({1, 0, 0, 0}), mi));

    LatticePoint p = LatticePoint::from_coords({{0, 0}, {2, 3}, {0, 0}});
    CHECK(p.dimension() == 3);
    CHECK(p.nonroot().size() == 1);
    CHECK(p.multi_index() == MultiIndex::from_levels({0, 2, 0}));
    auto x = p.coordinates();
    CHECK(x == std::vector<double>{0.5, 0.75, 0.5});
    CHECK(p.with_coord(1, Coord1D{0, 0}).nonroot().empty());
}
