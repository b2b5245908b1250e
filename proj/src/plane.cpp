#include "hjelmslev/plane.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hjelmslev {

bool is_unimodular(const GaloisRing& ring, const HomogeneousVector& v) {
    return std::any_of(v.begin(), v.end(), [&](RingElement c) { return ring.is_unit(c); });
}

HomogeneousVector normalize(const GaloisRing& ring, const HomogeneousVector& v) {
    for (RingElement c : v) {
        if (ring.is_unit(c)) return scale(ring, ring.inverse(c), v);
    }
    throw std::invalid_argument("normalize: " + format_vector(ring, v) + " is not unimodular");
}

RingElement dot(const GaloisRing& ring, const HomogeneousVector& a, const HomogeneousVector& b) {
    RingElement sum = ring.mul(a[0], b[0]);
    sum = ring.add(sum, ring.mul(a[1], b[1]));
    return ring.add(sum, ring.mul(a[2], b[2]));
}

HomogeneousVector scale(const GaloisRing& ring, RingElement s, const HomogeneousVector& v) {
    return {ring.mul(s, v[0]), ring.mul(s, v[1]), ring.mul(s, v[2])};
}

std::string format_vector(const GaloisRing& ring, const HomogeneousVector& v) {
    return "(" + ring.format(v[0]) + "," + ring.format(v[1]) + "," + ring.format(v[2]) + ")";
}

PlaneModel::PlaneModel(const GaloisRingSpec& spec) : PlaneModel(std::make_shared<const GaloisRing>(spec)) {}

PlaneModel::PlaneModel(std::shared_ptr<const GaloisRing> ring) : ring_(std::move(ring)) {
    const GaloisRing& R = *ring_;
    const auto elements = R.elements();

    // Normalized triples: leftmost unit coordinate is 1, everything to its
    // left is a non-unit.
    std::vector<RingElement> nonunits;
    for (RingElement e : elements)
        if (!R.is_unit(e)) nonunits.push_back(e);
    std::vector<HomogeneousVector> reps;
    for (RingElement b : elements)
        for (RingElement c : elements) reps.push_back({R.one(), b, c});
    for (RingElement a : nonunits)
        for (RingElement c : elements) reps.push_back({a, R.one(), c});
    for (RingElement a : nonunits)
        for (RingElement b : nonunits) reps.push_back({a, b, R.one()});
    std::sort(reps.begin(), reps.end());

    points_.reserve(reps.size());
    lines_.reserve(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        points_.push_back(Point{reps[i], static_cast<PointIndex>(i)});
        lines_.push_back(Line{reps[i], static_cast<LineIndex>(i)});
        lookup_.emplace(key(reps[i]), static_cast<std::uint32_t>(i));
    }

    points_on_line_.assign(lines_.size(), {});
    lines_through_point_.assign(points_.size(), {});
    for (const Line& L : lines_) {
        for (const Point& P : points_) {
            if (dot(R, L.rep, P.rep) == R.zero()) {
                points_on_line_[L.index].push_back(P.index);
                lines_through_point_[P.index].push_back(L.index);
            }
        }
    }

    if (R.m() > 1) residue_plane_ = std::make_shared<const PlaneModel>(R.residue_field_ptr());
    const PlaneModel& base = residue_plane();
    neighbor_class_.resize(points_.size());
    for (const Point& P : points_) {
        if (!residue_plane_) {
            neighbor_class_[P.index] = P.index;
            continue;
        }
        const HomogeneousVector bar{R.residue(P.rep[0]), R.residue(P.rep[1]), R.residue(P.rep[2])};
        neighbor_class_[P.index] = base.point_index(bar);
    }
}

std::uint64_t PlaneModel::key(const HomogeneousVector& v) const {
    const auto n = static_cast<std::uint64_t>(ring_->order());
    return (static_cast<std::uint64_t>(v[0].id) * n + v[1].id) * n + v[2].id;
}

std::optional<PointIndex> PlaneModel::find_point(const HomogeneousVector& v) const {
    if (!is_unimodular(*ring_, v)) return std::nullopt;
    const auto it = lookup_.find(key(normalize(*ring_, v)));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<LineIndex> PlaneModel::find_line(const HomogeneousVector& v) const { return find_point(v); }

PointIndex PlaneModel::point_index(const HomogeneousVector& v) const {
    if (auto idx = find_point(v)) return *idx;
    throw std::invalid_argument("no point with coordinates " + format_vector(*ring_, v));
}

LineIndex PlaneModel::line_index(const HomogeneousVector& v) const {
    if (auto idx = find_line(v)) return *idx;
    throw std::invalid_argument("no line with coordinates " + format_vector(*ring_, v));
}

bool PlaneModel::incident(const Point& point, const Line& line) const {
    return dot(*ring_, line.rep, point.rep) == ring_->zero();
}

bool PlaneModel::incident(PointIndex point, LineIndex line) const { return incident(points_.at(point), lines_.at(line)); }

std::vector<std::vector<std::uint8_t>> PlaneModel::incidence_matrix() const {
    std::vector<std::vector<std::uint8_t>> M(lines_.size(), std::vector<std::uint8_t>(points_.size(), 0));
    for (std::size_t L = 0; L < lines_.size(); ++L)
        for (PointIndex P : points_on_line_[L]) M[L][P] = 1;
    return M;
}

LineIndex PlaneModel::line_neighbor_class(LineIndex line) const {
    if (!residue_plane_) return line;
    const auto& rep = lines_.at(line).rep;
    const HomogeneousVector bar{ring_->residue(rep[0]), ring_->residue(rep[1]), ring_->residue(rep[2])};
    return residue_plane_->line_index(bar);
}

std::string PlaneModel::dump() const {
    std::ostringstream os;
    os << "# " << ring_->spec().to_string() << "\n# points " << points_.size() << "\n";
    for (const Point& P : points_) os << P.index << ": " << format_vector(*ring_, P.rep) << "\n";
    os << "# lines " << lines_.size() << "\n";
    for (const Line& L : lines_) os << L.index << ": " << format_vector(*ring_, L.rep) << "\n";
    return os.str();
}

}  // namespace hjelmslev
