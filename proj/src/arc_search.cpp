#include "hjelmslev/arc_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace hjelmslev {

const char* to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Found:
            return "found";
        case SearchStatus::Infeasible:
            return "infeasible";
        case SearchStatus::Inconclusive:
            return "inconclusive";
    }
    return "unknown";
}

ArcSolution make_solution(const CondensedSystem& system, int u, std::vector<int> x) {
    const std::size_t k = system.size();
    if (x.size() != k) throw std::invalid_argument("make_solution: x has the wrong length");
    ArcSolution s;
    s.y.assign(k, u);
    for (std::size_t j = 0; j < k; ++j) {
        s.n += static_cast<std::int64_t>(system.orbit_sizes[j]) * x[j];
        for (std::size_t i = 0; i < k; ++i) s.y[i] -= system.matrix[i][j] * x[j];
    }
    const int min_slack = k ? *std::min_element(s.y.begin(), s.y.end()) : u;
    s.max_intersection = u - min_slack;
    s.attains_u = min_slack == 0;
    s.x = std::move(x);
    return s;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Entry {
    std::uint32_t row;
    int coef;
};

// Read-only data shared by all workers.
struct Shared {
    int u = 0;
    int cap = 1;
    SearchMode mode = SearchMode::FixedN;
    std::int64_t target = 0;
    std::vector<std::uint32_t> order;           // branching position -> variable
    std::vector<std::int64_t> size;             // by position
    std::vector<std::vector<Entry>> column;     // by position
    std::size_t rows = 0;
    Budget budget;
    Clock::time_point start;

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exhausted{false};
    std::atomic<std::size_t> first_found{std::numeric_limits<std::size_t>::max()};
    std::atomic<std::int64_t> global_best{-1};
};

using Prefix = std::vector<int>;

class Worker {
public:
    explicit Worker(Shared& shared) : sh_(shared), load_(shared.rows, 0), value_(shared.order.size(), 0) {}

    // Runs one task. Returns false if it was abandoned.
    bool run(const Prefix& prefix, std::size_t task) {
        task_ = task;
        std::fill(load_.begin(), load_.end(), 0);
        std::fill(value_.begin(), value_.end(), 0);
        mass_ = 0;
        local_best_ = -1;
        best_.reset();
        aborted_ = false;
        for (std::size_t d = 0; d < prefix.size(); ++d) assign(d, prefix[d]);
        search(prefix.size());
        flush();
        return !aborted_;
    }

    const std::optional<std::vector<int>>& best() const { return best_; }
    std::int64_t best_mass() const { return local_best_; }

    // Enumerates the task prefixes at depth `depth` in branching order.
    void frontier(std::size_t depth, std::vector<Prefix>& out) {
        frontier_depth_ = depth;
        frontier_ = &out;
        search(0);
        frontier_ = nullptr;
        flush();
    }

private:
    void assign(std::size_t pos, int v) {
        value_[pos] = v;
        if (v == 0) return;
        for (const Entry& e : sh_.column[pos]) load_[e.row] += e.coef * v;
        mass_ += sh_.size[pos] * v;
    }

    void unassign(std::size_t pos) {
        const int v = value_[pos];
        value_[pos] = 0;
        if (v == 0) return;
        for (const Entry& e : sh_.column[pos]) load_[e.row] -= e.coef * v;
        mass_ -= sh_.size[pos] * v;
    }

    int admissible(std::size_t pos) const {
        int best = sh_.cap;
        for (const Entry& e : sh_.column[pos]) best = std::min(best, (sh_.u - load_[e.row]) / e.coef);
        return std::max(best, 0);
    }

    void flush() {
        if (pending_) {
            sh_.nodes.fetch_add(pending_, std::memory_order_relaxed);
            pending_ = 0;
        }
    }

    bool should_stop() {
        if (aborted_) return true;
        if (++pending_ < 1024) return false;
        const std::uint64_t total = sh_.nodes.fetch_add(pending_, std::memory_order_relaxed) + pending_;
        pending_ = 0;
        if (sh_.budget.max_nodes && total >= sh_.budget.max_nodes) sh_.exhausted = true;
        if (sh_.budget.max_seconds > 0 &&
            std::chrono::duration<double>(Clock::now() - sh_.start).count() >= sh_.budget.max_seconds)
            sh_.exhausted = true;
        if (sh_.exhausted) aborted_ = true;
        if (sh_.mode == SearchMode::FixedN && frontier_ == nullptr && sh_.first_found.load() < task_) aborted_ = true;
        return aborted_;
    }

    void record() {
        std::vector<int> x(sh_.order.size(), 0);
        for (std::size_t pos = 0; pos < value_.size(); ++pos) x[sh_.order[pos]] = value_[pos];
        best_ = std::move(x);
        local_best_ = mass_;
        if (sh_.mode == SearchMode::FixedN) {
            std::size_t cur = sh_.first_found.load();
            while (task_ < cur && !sh_.first_found.compare_exchange_weak(cur, task_)) {
            }
        } else {
            std::int64_t cur = sh_.global_best.load();
            while (mass_ > cur && !sh_.global_best.compare_exchange_weak(cur, mass_)) {
            }
        }
    }

    // Returns true when the search in this task is finished (found in fixed-n mode).
    bool search(std::size_t pos) {
        if (should_stop()) return true;
        const std::size_t k = sh_.order.size();
        const bool fixed = sh_.mode == SearchMode::FixedN;

        if (frontier_ == nullptr && fixed && mass_ == sh_.target) {
            record();
            return true;
        }
        if (frontier_ != nullptr && (pos == frontier_depth_ || pos == k || (fixed && mass_ == sh_.target))) {
            frontier_->emplace_back(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(pos));
            return false;
        }
        if (pos == k) {
            if (!fixed && mass_ > local_best_) record();
            return false;
        }

        std::int64_t optimistic = 0;
        for (std::size_t p = pos; p < k; ++p) optimistic += sh_.size[p] * admissible(p);
        const std::int64_t bound = mass_ + optimistic;
        if (fixed) {
            if (bound < sh_.target) return false;
        } else if (frontier_ == nullptr) {
            if (bound <= local_best_ || bound < sh_.global_best.load(std::memory_order_relaxed)) return false;
        }

        int top = admissible(pos);
        if (fixed) top = static_cast<int>(std::min<std::int64_t>(top, (sh_.target - mass_) / sh_.size[pos]));
        for (int v = top; v >= 0; --v) {
            assign(pos, v);
            const bool done = search(pos + 1);
            unassign(pos);
            if (done) return true;
        }
        return false;
    }

    Shared& sh_;
    std::vector<int> load_;
    std::vector<int> value_;
    std::int64_t mass_ = 0;
    std::int64_t local_best_ = -1;
    std::optional<std::vector<int>> best_;
    std::size_t task_ = 0;
    bool aborted_ = false;
    std::uint64_t pending_ = 0;
    std::size_t frontier_depth_ = 0;
    std::vector<Prefix>* frontier_ = nullptr;
};

void prepare(const SearchProblem& problem, Shared& sh) {
    const CondensedSystem& sys = problem.system;
    const std::size_t k = sys.size();
    if (problem.u < 1) throw std::invalid_argument("search: u must be at least 1");
    if (sys.matrix.size() != k) throw std::invalid_argument("search: condensed matrix is not square");
    sh.u = problem.u;
    sh.cap = 1;
    if (problem.kind == ArcKind::Multiarc) sh.cap = problem.multiplicity_cap > 0 ? std::min(problem.multiplicity_cap, problem.u) : problem.u;
    sh.mode = problem.mode;
    sh.target = problem.n;
    sh.rows = k;
    sh.budget = problem.budget;

    const std::int64_t total = std::accumulate(sys.orbit_sizes.begin(), sys.orbit_sizes.end(), std::int64_t{0});
    if (problem.mode == SearchMode::FixedN && (problem.n < 0 || problem.n > total * sh.cap))
        throw std::invalid_argument("search: n = " + std::to_string(problem.n) + " is outside [0, " +
                                    std::to_string(total * sh.cap) + "]");

    sh.order.resize(k);
    std::iota(sh.order.begin(), sh.order.end(), 0U);
    std::stable_sort(sh.order.begin(), sh.order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return sys.orbit_sizes[a] > sys.orbit_sizes[b]; });
    for (std::uint32_t var : sh.order) {
        sh.size.push_back(static_cast<std::int64_t>(sys.orbit_sizes[var]));
        std::vector<Entry> col;
        for (std::size_t i = 0; i < k; ++i)
            if (sys.matrix[i][var] > 0) col.push_back({static_cast<std::uint32_t>(i), sys.matrix[i][var]});
        sh.column.push_back(std::move(col));
    }
}

SearchResult run_search(const SearchProblem& problem) {
    Shared sh;
    prepare(problem, sh);
    sh.start = Clock::now();

    std::vector<Prefix> tasks;
    {
        Worker w(sh);
        w.frontier(static_cast<std::size_t>(std::max(problem.split_depth, 0)), tasks);
    }

    struct TaskResult {
        bool complete = false;
        std::optional<std::vector<int>> x;
        std::int64_t mass = -1;
    };
    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        Worker w(sh);
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            if (sh.exhausted) break;
            if (sh.mode == SearchMode::FixedN && sh.first_found.load() < t) continue;
            const bool complete = w.run(tasks[t], t);
            results[t] = TaskResult{complete, w.best(), w.best_mass()};
        }
    };
    const int workers = std::max(1, problem.workers);
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }

    SearchResult result;
    result.nodes = sh.nodes.load();
    result.seconds = std::chrono::duration<double>(Clock::now() - sh.start).count();
    const bool exhausted = sh.exhausted.load();

    std::optional<std::vector<int>> best;
    std::int64_t best_mass = -1;
    for (const TaskResult& r : results) {
        if (!r.x) continue;
        if (sh.mode == SearchMode::FixedN) {
            best = r.x;
            break;
        }
        if (r.mass > best_mass) {
            best_mass = r.mass;
            best = r.x;
        }
    }
    if (best) {
        result.status = SearchStatus::Found;
        result.solution = make_solution(problem.system, problem.u, *best);
    } else {
        result.status = exhausted ? SearchStatus::Inconclusive : SearchStatus::Infeasible;
    }
    result.optimal = sh.mode == SearchMode::Maximize && best && !exhausted;
    return result;
}

}  // namespace

SearchResult solve_fixed_n(const SearchProblem& problem) {
    if (problem.mode != SearchMode::FixedN) throw std::invalid_argument("solve_fixed_n: problem is not in fixed-n mode");
    return run_search(problem);
}

SearchResult maximize(const SearchProblem& problem) {
    if (problem.mode != SearchMode::Maximize) throw std::invalid_argument("maximize: problem is not in maximize mode");
    return run_search(problem);
}

SearchResult solve(const SearchProblem& problem) {
    return problem.mode == SearchMode::FixedN ? solve_fixed_n(problem) : maximize(problem);
}

std::vector<PointIndex> expand(std::span<const int> x, const OrbitPartition& partition) {
    if (x.size() != partition.size()) throw std::invalid_argument("expand: x does not match the partition");
    std::vector<PointIndex> points;
    for (std::size_t j = 0; j < x.size(); ++j)
        for (int c = 0; c < x[j]; ++c) points.insert(points.end(), partition.point_orbits[j].begin(), partition.point_orbits[j].end());
    std::sort(points.begin(), points.end());
    return points;
}

std::vector<int> line_intersections(std::span<const PointIndex> points, const PlaneModel& plane) {
    std::vector<int> count(plane.num_lines(), 0);
    for (PointIndex P : points) {
        if (P >= plane.num_points()) throw std::out_of_range("point index " + std::to_string(P) + " out of range");
        for (LineIndex L : plane.lines_through_point(P)) ++count[L];
    }
    return count;
}

ArcReport verify_arc(std::span<const PointIndex> points, const PlaneModel& plane, int u) {
    const auto count = line_intersections(points, plane);
    ArcReport report;
    report.size = points.size();
    for (std::size_t L = 0; L < count.size(); ++L) {
        if (count[L] > report.max_line_count) {
            report.max_line_count = count[L];
            report.worst_line = static_cast<LineIndex>(L);
        }
    }
    std::vector<PointIndex> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    report.projective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    report.is_arc = report.max_line_count <= u;
    report.attains_u = report.max_line_count == u;
    return report;
}

std::map<int, std::size_t> secant_distribution(std::span<const PointIndex> points, const PlaneModel& plane) {
    std::map<int, std::size_t> histogram;
    for (int c : line_intersections(points, plane)) ++histogram[c];
    return histogram;
}

std::vector<PointIndex> extend_arc(std::span<const PointIndex> points, const PlaneModel& plane, int u) {
    const ArcReport report = verify_arc(points, plane, u);
    if (!report.is_arc || !report.projective) throw std::invalid_argument("extend_arc: input is not a projective arc");
    auto count = line_intersections(points, plane);
    std::vector<bool> in_arc(plane.num_points(), false);
    for (PointIndex P : points) in_arc[P] = true;
    for (PointIndex P = 0; P < plane.num_points(); ++P) {
        if (in_arc[P]) continue;
        const auto lines = plane.lines_through_point(P);
        if (std::all_of(lines.begin(), lines.end(), [&](LineIndex L) { return count[L] < u; })) {
            in_arc[P] = true;
            for (LineIndex L : lines) ++count[L];
        }
    }
    std::vector<PointIndex> result;
    for (PointIndex P = 0; P < plane.num_points(); ++P)
        if (in_arc[P]) result.push_back(P);
    return result;
}

bool is_invariant(std::span<const PointIndex> points, const PlaneModel& plane, std::span<const RingMatrix> generators) {
    std::vector<int> mult(plane.num_points(), 0);
    for (PointIndex P : points) ++mult.at(P);
    for (const RingMatrix& g : generators) {
        const auto perm = point_permutation(plane, g);
        for (PointIndex P = 0; P < plane.num_points(); ++P)
            if (mult[perm[P]] != mult[P]) return false;
    }
    return true;
}

}  // namespace hjelmslev
