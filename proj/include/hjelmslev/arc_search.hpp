#ifndef HJELMSLEV_ARC_SEARCH_HPP
#define HJELMSLEV_ARC_SEARCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hjelmslev/group_orbits.hpp"
#include "hjelmslev/plane.hpp"

namespace hjelmslev {

enum class ArcKind { Projective, Multiarc };
enum class SearchMode { FixedN, Maximize };

/// Zero means unlimited.
struct Budget {
    std::uint64_t max_nodes = 0;
    double max_seconds = 0.0;
};

/**
 * The condensed Diophantine system: find orbit multiplicities x with
 * sum |w_j| x_j = n (or as large as possible) and M^G x <= u componentwise.
 */
struct SearchProblem {
    CondensedSystem system;
    int u = 1;
    SearchMode mode = SearchMode::FixedN;
    std::int64_t n = 0;
    ArcKind kind = ArcKind::Projective;
    /// Upper bound on x_j in multiarc mode; 0 selects u.
    int multiplicity_cap = 0;
    Budget budget;
    int workers = 1;
    /// Depth at which the search tree is cut into independent tasks.
    int split_depth = 6;
};

struct ArcSolution {
    std::vector<int> x;
    std::int64_t n = 0;
    /// Slack per line orbit: u - (M^G x)_i.
    std::vector<int> y;
    /// Largest line intersection, u - min(y).
    int max_intersection = 0;
    /// True iff some slack is zero.
    bool attains_u = false;
};

enum class SearchStatus { Found, Infeasible, Inconclusive };

struct SearchResult {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<ArcSolution> solution;
    /// Maximize mode: every larger size was refuted.
    bool optimal = false;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

const char* to_string(SearchStatus status);

/// Builds the solution record (n, slack, attainment) for a given x.
ArcSolution make_solution(const CondensedSystem& system, int u, std::vector<int> x);

/**
 * Exact depth-first branch and bound over orbit variables.
 *
 * Variables are branched in order of descending orbit size, larger values
 * first. A branch is cut when a line orbit would exceed u or when the
 * admissible remaining orbit mass cannot reach n. Budget exhaustion yields
 * Inconclusive, never Infeasible. The solution returned is the first one in
 * that branching order, independent of the worker count.
 */
SearchResult solve_fixed_n(const SearchProblem& problem);

/// Largest n for which the system is solvable. The solution is the first
/// maximum-size one in branching order; optimal is false if the budget ran out.
SearchResult maximize(const SearchProblem& problem);

/// Dispatches on problem.mode.
SearchResult solve(const SearchProblem& problem);

/// Union of orbits with multiplicities x_j, sorted ascending.
std::vector<PointIndex> expand(std::span<const int> x, const OrbitPartition& partition);

struct ArcReport {
    std::size_t size = 0;
    int max_line_count = 0;
    /// First line carrying max_line_count points.
    LineIndex worst_line = 0;
    bool is_arc = false;
    bool attains_u = false;
    bool projective = true;
};

/// Checks a point multiset against u using only the plane's incidence.
/// Throws std::out_of_range for an unknown point index.
ArcReport verify_arc(std::span<const PointIndex> points, const PlaneModel& plane, int u);

/// Line count per intersection number.
std::map<int, std::size_t> secant_distribution(std::span<const PointIndex> points, const PlaneModel& plane);

/// Number of multiset points on every line.
std::vector<int> line_intersections(std::span<const PointIndex> points, const PlaneModel& plane);

/// Greedily adds points in ascending index order while no line exceeds u.
/// The input must be a projective arc for u (std::invalid_argument otherwise).
std::vector<PointIndex> extend_arc(std::span<const PointIndex> points, const PlaneModel& plane, int u);

/// True iff every generator maps the multiset onto itself.
bool is_invariant(std::span<const PointIndex> points, const PlaneModel& plane, std::span<const RingMatrix> generators);

}  // namespace hjelmslev

#endif  // HJELMSLEV_ARC_SEARCH_HPP
