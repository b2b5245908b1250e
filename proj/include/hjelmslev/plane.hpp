#ifndef HJELMSLEV_PLANE_HPP
#define HJELMSLEV_PLANE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hjelmslev/galois_ring.hpp"

namespace hjelmslev {

using HomogeneousVector = std::array<RingElement, 3>;
using PointIndex = std::uint32_t;
using LineIndex = std::uint32_t;

struct Point {
    HomogeneousVector rep;
    PointIndex index = 0;
};

/// A line, given by dual coordinates: it holds the points P with rep . P = 0.
struct Line {
    HomogeneousVector rep;
    LineIndex index = 0;
};

bool is_unimodular(const GaloisRing& ring, const HomogeneousVector& v);

/// Scales v by the inverse of its leftmost unit coordinate.
/// Throws std::invalid_argument if v has no unit coordinate.
HomogeneousVector normalize(const GaloisRing& ring, const HomogeneousVector& v);

RingElement dot(const GaloisRing& ring, const HomogeneousVector& a, const HomogeneousVector& b);
HomogeneousVector scale(const GaloisRing& ring, RingElement s, const HomogeneousVector& v);

std::string format_vector(const GaloisRing& ring, const HomogeneousVector& v);

/**
 * The projective Hjelmslev plane PHG(2,R).
 *
 * Points and lines are the normalized unimodular triples, sorted
 * lexicographically by element id; line i has the same coordinates as
 * point i. Incidence is a zero dot product. The plane is immutable once
 * built and safe to share between threads.
 */
class PlaneModel {
public:
    explicit PlaneModel(std::shared_ptr<const GaloisRing> ring);
    explicit PlaneModel(const GaloisRingSpec& spec);

    const GaloisRing& ring() const { return *ring_; }
    std::shared_ptr<const GaloisRing> ring_ptr() const { return ring_; }

    std::size_t num_points() const { return points_.size(); }
    std::size_t num_lines() const { return lines_.size(); }
    std::span<const Point> points() const { return points_; }
    std::span<const Line> lines() const { return lines_; }
    const Point& point(PointIndex i) const { return points_.at(i); }
    const Line& line(LineIndex i) const { return lines_.at(i); }

    /// Index of the point spanned by a unimodular vector (normalized first).
    std::optional<PointIndex> find_point(const HomogeneousVector& v) const;
    std::optional<LineIndex> find_line(const HomogeneousVector& v) const;
    PointIndex point_index(const HomogeneousVector& v) const;
    LineIndex line_index(const HomogeneousVector& v) const;

    bool incident(const Point& point, const Line& line) const;
    bool incident(PointIndex point, LineIndex line) const;

    std::span<const PointIndex> points_on_line(LineIndex line) const { return points_on_line_.at(line); }
    std::span<const LineIndex> lines_through_point(PointIndex point) const {
        return lines_through_point_.at(point);
    }
    /// Constant number of points on every line, q^{m-1}(q+1).
    std::size_t points_per_line() const { return points_on_line_.front().size(); }

    /// Dense 0/1 matrix, rows are lines and columns are points.
    std::vector<std::vector<std::uint8_t>> incidence_matrix() const;

    /// The plane PG(2,F_q) over the residue field (this plane when m = 1).
    const PlaneModel& residue_plane() const { return residue_plane_ ? *residue_plane_ : *this; }
    /// Index in residue_plane() of the residue image of the point.
    PointIndex neighbor_class(PointIndex point) const { return neighbor_class_.at(point); }
    std::size_t num_neighbor_classes() const { return residue_plane().num_points(); }
    /// Index in residue_plane() of the residue image of the line.
    LineIndex line_neighbor_class(LineIndex line) const;

    /// "idx: (c0,c1,c2)" per point, then per line.
    std::string dump() const;

private:
    std::uint64_t key(const HomogeneousVector& v) const;

    std::shared_ptr<const GaloisRing> ring_;
    std::vector<Point> points_;
    std::vector<Line> lines_;
    std::unordered_map<std::uint64_t, std::uint32_t> lookup_;
    std::vector<std::vector<PointIndex>> points_on_line_;
    std::vector<std::vector<LineIndex>> lines_through_point_;
    std::shared_ptr<const PlaneModel> residue_plane_;
    std::vector<PointIndex> neighbor_class_;
};

}  // namespace hjelmslev

#endif  // HJELMSLEV_PLANE_HPP
