#include "doctest.h"

#include <algorithm>

#include "hjelmslev/arc_search.hpp"

using namespace hjelmslev;

namespace {

struct SingerSetup {
    PlaneModel plane;
    OrbitPartition partition;
    CondensedSystem system;

    explicit SingerSetup(const char* ring)
        : plane(parse_ring_spec(ring)),
          partition(compute_orbits(plane, std::vector<RingMatrix>{singer_lift(plane.ring())})),
          system(condense(plane, partition)) {}
};

SearchProblem fixed(const CondensedSystem& system, int u, std::int64_t n) {
    SearchProblem p;
    p.system = system;
    p.u = u;
    p.n = n;
    return p;
}

}  // namespace

TEST_CASE("found solutions satisfy the condensed system") {
    const SingerSetup s("G16");
    const SearchResult r = solve_fixed_n(fixed(s.system, 8, 126));
    REQUIRE(r.status == SearchStatus::Found);
    const auto& sol = *r.solution;
    std::int64_t mass = 0;
    for (std::size_t j = 0; j < sol.x.size(); ++j) mass += static_cast<std::int64_t>(s.system.orbit_sizes[j]) * sol.x[j];
    CHECK(mass == 126);
    const auto points = expand(sol.x, s.partition);
    const auto counts = line_intersections(points, s.plane);
    for (std::size_t i = 0; i < s.system.size(); ++i) {
        int hits = 0;
        for (std::size_t j = 0; j < sol.x.size(); ++j) hits += s.system.matrix[i][j] * sol.x[j];
        // y is the slack: M x + y = u.
        CHECK(hits + sol.y[i] == 8);
        CHECK(sol.y[i] >= 0);
        for (LineIndex L : s.partition.line_orbits[i]) CHECK(counts[L] == hits);
    }
    CHECK(sol.attains_u);
    CHECK(verify_arc(points, s.plane, 8).is_arc);
}

TEST_CASE("unreachable sizes are infeasible, exhausted budgets are inconclusive") {
    const SingerSetup s("G16");
    CHECK(solve_fixed_n(fixed(s.system, 8, 127)).status == SearchStatus::Infeasible);
    CHECK(solve_fixed_n(fixed(s.system, 8, 0)).status == SearchStatus::Found);

    const PlaneModel plane(parse_ring_spec("Z16"));
    SearchProblem p = fixed(condense(plane, compute_orbits(plane, std::vector<RingMatrix>{})), 2, 30);
    p.budget.max_nodes = 1000;
    const SearchResult r = solve_fixed_n(p);
    CHECK(r.status == SearchStatus::Inconclusive);
    CHECK_FALSE(r.solution.has_value());
}

TEST_CASE("the empty arc is a solution for n = 0") {
    const SingerSetup s("Z25");
    const SearchResult r = solve_fixed_n(fixed(s.system, 3, 0));
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(std::all_of(r.solution->x.begin(), r.solution->x.end(), [](int v) { return v == 0; }));
    CHECK(expand(r.solution->x, s.partition).empty());
    CHECK(std::all_of(r.solution->y.begin(), r.solution->y.end(), [](int v) { return v == 3; }));
    CHECK_FALSE(r.solution->attains_u);
}

TEST_CASE("worker count does not change the answer") {
    const SingerSetup s("G16");
    for (const std::int64_t n : {84, 105, 126}) {
        SearchProblem one = fixed(s.system, 8, n);
        SearchProblem three = one;
        three.workers = 3;
        three.split_depth = 3;
        const SearchResult a = solve_fixed_n(one);
        const SearchResult b = solve_fixed_n(three);
        REQUIRE(a.solution.has_value());
        REQUIRE(b.solution.has_value());
        CHECK(a.solution->x == b.solution->x);
    }
    const PlaneModel plane(parse_ring_spec("Z4"));
    SearchProblem p;
    p.system = condense(plane, compute_orbits(plane, std::vector<RingMatrix>{}));
    p.u = 3;
    p.mode = SearchMode::Maximize;
    SearchProblem q = p;
    q.workers = 4;
    const SearchResult a = maximize(p);
    const SearchResult b = maximize(q);
    CHECK(a.optimal);
    CHECK(b.optimal);
    CHECK(a.solution->x == b.solution->x);
}

TEST_CASE("maximize reaches 9 on PHG(2,Z9) with u = 2 within a budget") {
    const PlaneModel plane(parse_ring_spec("Z9"));
    SearchProblem p;
    p.system = condense(plane, compute_orbits(plane, std::vector<RingMatrix>{}));
    p.u = 2;
    p.mode = SearchMode::Maximize;
    p.budget.max_seconds = 3;
    const SearchResult r = maximize(p);
    REQUIRE(r.solution.has_value());
    CHECK(r.solution->n >= 9);
    CHECK(verify_arc(expand(r.solution->x, compute_orbits(plane, std::vector<RingMatrix>{})), plane, 2).is_arc);
}

TEST_CASE("multiarc mode respects the multiplicity cap") {
    const SingerSetup s("Z25");
    SearchProblem p = fixed(s.system, 8, 155);
    p.kind = ArcKind::Multiarc;
    p.multiplicity_cap = 1;
    const SearchResult capped = solve_fixed_n(p);
    if (capped.solution)
        for (int v : capped.solution->x) CHECK(v <= 1);
    p.multiplicity_cap = 0;
    const SearchResult r = solve_fixed_n(p);
    REQUIRE(r.solution.has_value());
    CHECK(*std::max_element(r.solution->x.begin(), r.solution->x.end()) == 2);
    const ArcReport report = verify_arc(expand(r.solution->x, s.partition), s.plane, 8);
    CHECK_FALSE(report.projective);
    CHECK(report.max_line_count == 8);
}

TEST_CASE("verify reports the violating line") {
    const PlaneModel plane(parse_ring_spec("Z4"));
    const auto on_line = plane.points_on_line(0);
    const std::vector<PointIndex> three(on_line.begin(), on_line.begin() + 3);
    const ArcReport r = verify_arc(three, plane, 2);
    CHECK_FALSE(r.is_arc);
    CHECK(r.max_line_count == 3);
    CHECK(plane.incident(three[0], r.worst_line));
    CHECK_THROWS_AS(verify_arc(std::vector<PointIndex>{9999}, plane, 2), std::out_of_range);
}

TEST_CASE("secant distribution counts every line once") {
    const SingerSetup s("G16");
    const auto orbit = s.partition.point_orbits[0];
    const auto dist = secant_distribution(orbit, s.plane);
    std::size_t lines = 0;
    std::size_t incidences = 0;
    for (const auto& [k, c] : dist) {
        lines += c;
        incidences += static_cast<std::size_t>(k) * c;
    }
    CHECK(lines == s.plane.num_lines());
    CHECK(incidences == orbit.size() * s.plane.points_per_line());
}

TEST_CASE("extend regrows the (126,8)-arc from a sub-arc") {
    const SingerSetup s("G16");
    const SearchResult r = solve_fixed_n(fixed(s.system, 8, 126));
    REQUIRE(r.solution.has_value());
    auto x = r.solution->x;
    *std::find(x.begin(), x.end(), 1) = 0;
    const auto sub = expand(x, s.partition);
    REQUIRE(sub.size() == 105);
    const auto extended = extend_arc(sub, s.plane, 8);
    CHECK(extended.size() == 126);
    CHECK(std::includes(extended.begin(), extended.end(), sub.begin(), sub.end()));
    CHECK(verify_arc(extended, s.plane, 8).is_arc);
    CHECK(extend_arc(extended, s.plane, 8).size() == extended.size());
}

TEST_CASE("expanded orbit unions are invariant") {
    const SingerSetup s("G16");
    const std::vector<RingMatrix> gens{singer_lift(s.plane.ring())};
    const std::vector<int> x{1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
    const auto points = expand(x, s.partition);
    CHECK(points.size() == 63);
    CHECK(is_invariant(points, s.plane, gens));
    const std::vector<PointIndex> partial(points.begin(), points.begin() + 5);
    CHECK_FALSE(is_invariant(partial, s.plane, gens));
}
