#ifndef HJELMSLEV_GROUP_ORBITS_HPP
#define HJELMSLEV_GROUP_ORBITS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hjelmslev/galois_ring.hpp"
#include "hjelmslev/plane.hpp"

namespace hjelmslev {

/// A 3x3 matrix over a Galois ring, row-major.
struct RingMatrix {
    std::array<RingElement, 9> entries{};

    RingElement& at(int row, int col) { return entries[static_cast<std::size_t>(row * 3 + col)]; }
    RingElement at(int row, int col) const { return entries[static_cast<std::size_t>(row * 3 + col)]; }

    static RingMatrix identity(const GaloisRing& ring);
    static RingMatrix scalar(const GaloisRing& ring, RingElement s);

    friend bool operator==(const RingMatrix&, const RingMatrix&) = default;
};

RingMatrix multiply(const GaloisRing& ring, const RingMatrix& a, const RingMatrix& b);
RingMatrix power(const GaloisRing& ring, const RingMatrix& a, std::uint64_t e);
RingElement determinant(const GaloisRing& ring, const RingMatrix& a);
bool is_invertible(const GaloisRing& ring, const RingMatrix& a);
/// Adjugate times the inverse determinant. Throws std::domain_error if singular.
RingMatrix inverse(const GaloisRing& ring, const RingMatrix& a);
bool is_scalar(const GaloisRing& ring, const RingMatrix& a);
/// Elementwise residue, as a matrix over ring.residue_field().
RingMatrix residue(const GaloisRing& ring, const RingMatrix& a);

/// Order of the collineation induced by a: the least t > 0 with a^t scalar.
/// Returns 0 if no such t <= limit exists.
std::uint64_t projective_order(const GaloisRing& ring, const RingMatrix& a, std::uint64_t limit = 1U << 20);

/// A * v with v a column vector.
HomogeneousVector apply(const GaloisRing& ring, const RingMatrix& a, const HomogeneousVector& v);
/// l * a with l a row vector.
HomogeneousVector apply_row(const GaloisRing& ring, const HomogeneousVector& l, const RingMatrix& a);

/// Index of the point normalize(A * P). Throws std::domain_error for singular A.
PointIndex act_on_point(const PlaneModel& plane, const RingMatrix& a, PointIndex point);
/// Index of the line normalize(L * A^{-1}). Throws std::domain_error for singular A.
LineIndex act_on_line(const PlaneModel& plane, const RingMatrix& a, LineIndex line);

std::vector<PointIndex> point_permutation(const PlaneModel& plane, const RingMatrix& a);
std::vector<LineIndex> line_permutation(const PlaneModel& plane, const RingMatrix& a);

/**
 * Orbits of a matrix group on points and lines.
 *
 * Orbits are numbered by their smallest member and each orbit's members are
 * sorted ascending. The point and line orbit counts are equal.
 */
struct OrbitPartition {
    std::vector<std::vector<PointIndex>> point_orbits;
    std::vector<std::vector<LineIndex>> line_orbits;
    std::vector<std::uint32_t> point_orbit_of;
    std::vector<std::uint32_t> line_orbit_of;

    std::size_t size() const { return point_orbits.size(); }
};

/// Closure of the generators on point and line indices. Throws
/// std::domain_error for a singular generator and std::runtime_error if the
/// point and line orbit counts differ.
OrbitPartition compute_orbits(const PlaneModel& plane, std::span<const RingMatrix> generators);

/// The condensed incidence system M^G: entry (i, j) is the number of points
/// of point orbit j on a representative line of line orbit i.
struct CondensedSystem {
    std::vector<std::vector<int>> matrix;
    std::vector<std::size_t> orbit_sizes;
    std::vector<std::size_t> line_orbit_sizes;
    std::size_t points_per_line = 0;

    std::size_t size() const { return orbit_sizes.size(); }
};

/// Uses the `representative`-th member of each line orbit (clamped to the
/// orbit length); the default is the smallest-index line.
CondensedSystem condense(const PlaneModel& plane, const OrbitPartition& partition, std::size_t representative = 0);

/**
 * A lift of a Singer cycle: a matrix over R whose residue acts transitively
 * on PG(2,F_q) and whose induced collineation has order q^2+q+1.
 *
 * Built from the companion matrix of the first monic cubic over F_q (in
 * element-id order) whose companion acts transitively, lifted to R and
 * raised to the p-power that brings its projective order down to q^2+q+1.
 */
RingMatrix singer_lift(const GaloisRing& ring);

/// The group used for a search: the trivial group, the Singer lift, or
/// explicit generators.
struct TrivialGroup {};
struct SingerGroup {};
using GroupDirective = std::variant<TrivialGroup, SingerGroup, std::vector<RingMatrix>>;

std::vector<RingMatrix> resolve_generators(const GaloisRing& ring, const GroupDirective& group);
std::string describe(const GroupDirective& group);

}  // namespace hjelmslev

#endif  // HJELMSLEV_GROUP_ORBITS_HPP
