#include "doctest.h"

#include <numeric>
#include <random>

#include "hjelmslev/group_orbits.hpp"

using namespace hjelmslev;

namespace {

RingMatrix random_invertible(const GaloisRing& R, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, R.order() - 1);
    for (;;) {
        RingMatrix a;
        for (auto& e : a.entries) e = R.from_int(pick(rng));
        if (is_invertible(R, a)) return a;
    }
}

}  // namespace

TEST_CASE("matrix inverse and determinant") {
    const GaloisRing R(parse_ring_spec("Z9"));
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        const RingMatrix a = random_invertible(R, rng);
        CHECK(multiply(R, a, inverse(R, a)) == RingMatrix::identity(R));
        CHECK(multiply(R, inverse(R, a), a) == RingMatrix::identity(R));
        const RingMatrix b = random_invertible(R, rng);
        CHECK(determinant(R, multiply(R, a, b)) == R.mul(determinant(R, a), determinant(R, b)));
    }
    RingMatrix singular = RingMatrix::identity(R);
    singular.at(2, 2) = R.from_int(3);
    CHECK_FALSE(is_invertible(R, singular));
    CHECK_THROWS(inverse(R, singular));
}

TEST_CASE("Singer lifts have projective order q^2+q+1") {
    for (const auto& [name, order] : std::vector<std::pair<const char*, std::uint64_t>>{
             {"G16", 21}, {"Z25", 31}, {"Z4", 7}, {"Z9", 13}, {"F4", 21}}) {
        const GaloisRing R(parse_ring_spec(name));
        const RingMatrix s = singer_lift(R);
        INFO(name);
        CHECK(projective_order(R, s) == order);
        CHECK(is_scalar(R, power(R, s, order)));
    }
}

TEST_CASE("Singer orbits on G16 and Z25") {
    for (const auto& [name, orbits, length] : std::vector<std::tuple<const char*, std::size_t, std::size_t>>{
             {"G16", 16, 21}, {"Z25", 25, 31}, {"Z9", 9, 13}}) {
        const PlaneModel plane(parse_ring_spec(name));
        const std::vector<RingMatrix> gens{singer_lift(plane.ring())};
        const OrbitPartition part = compute_orbits(plane, gens);
        INFO(name);
        CHECK(part.size() == orbits);
        CHECK(part.line_orbits.size() == orbits);
        for (const auto& o : part.point_orbits) CHECK(o.size() == length);
        for (std::size_t i = 1; i < part.size(); ++i) CHECK(part.point_orbits[i - 1][0] < part.point_orbits[i][0]);
    }
}

TEST_CASE("group actions preserve incidence") {
    const PlaneModel plane(parse_ring_spec("Z8"));
    std::mt19937 rng(11);
    for (int i = 0; i < 5; ++i) {
        const RingMatrix a = random_invertible(plane.ring(), rng);
        const auto pp = point_permutation(plane, a);
        const auto lp = line_permutation(plane, a);
        auto sorted = pp;
        std::sort(sorted.begin(), sorted.end());
        std::vector<PointIndex> iota(plane.num_points());
        std::iota(iota.begin(), iota.end(), 0U);
        CHECK(sorted == iota);
        for (PointIndex P = 0; P < plane.num_points(); ++P)
            for (LineIndex L : plane.lines_through_point(P)) REQUIRE(plane.incident(pp[P], lp[L]));
    }
}

TEST_CASE("condensed system is independent of the line representative") {
    const PlaneModel plane(parse_ring_spec("G16"));
    const std::vector<RingMatrix> gens{singer_lift(plane.ring())};
    const OrbitPartition part = compute_orbits(plane, gens);
    const CondensedSystem first = condense(plane, part, 0);
    const CondensedSystem second = condense(plane, part, 1);
    CHECK(first.matrix == second.matrix);
    for (std::size_t i = 0; i < first.size(); ++i) {
        const int row = std::accumulate(first.matrix[i].begin(), first.matrix[i].end(), 0);
        CHECK(static_cast<std::size_t>(row) == plane.points_per_line());
    }
}

TEST_CASE("trivial group gives singleton orbits") {
    const PlaneModel plane(parse_ring_spec("Z4"));
    const OrbitPartition part = compute_orbits(plane, std::vector<RingMatrix>{});
    CHECK(part.size() == plane.num_points());
    CHECK(resolve_generators(plane.ring(), GroupDirective{TrivialGroup{}}).empty());
    CHECK(resolve_generators(plane.ring(), GroupDirective{SingerGroup{}}).size() == 1);
}
