#include "hjelmslev/group_orbits.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace hjelmslev {

RingMatrix RingMatrix::identity(const GaloisRing& ring) { return scalar(ring, ring.one()); }

RingMatrix RingMatrix::scalar(const GaloisRing& ring, RingElement s) {
    RingMatrix a;
    a.entries.fill(ring.zero());
    for (int i = 0; i < 3; ++i) a.at(i, i) = s;
    return a;
}

RingMatrix multiply(const GaloisRing& ring, const RingMatrix& a, const RingMatrix& b) {
    RingMatrix c;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            RingElement sum = ring.zero();
            for (int k = 0; k < 3; ++k) sum = ring.add(sum, ring.mul(a.at(i, k), b.at(k, j)));
            c.at(i, j) = sum;
        }
    }
    return c;
}

RingMatrix power(const GaloisRing& ring, const RingMatrix& a, std::uint64_t e) {
    RingMatrix result = RingMatrix::identity(ring);
    RingMatrix base = a;
    while (e) {
        if (e & 1U) result = multiply(ring, result, base);
        base = multiply(ring, base, base);
        e >>= 1U;
    }
    return result;
}

namespace {

// 2x2 minor of a with row i and column j removed.
RingElement minor(const GaloisRing& ring, const RingMatrix& a, int i, int j) {
    int rows[2], cols[2];
    for (int k = 0, r = 0, c = 0; k < 3; ++k) {
        if (k != i) rows[r++] = k;
        if (k != j) cols[c++] = k;
    }
    return ring.sub(ring.mul(a.at(rows[0], cols[0]), a.at(rows[1], cols[1])),
                    ring.mul(a.at(rows[0], cols[1]), a.at(rows[1], cols[0])));
}

}  // namespace

RingElement determinant(const GaloisRing& ring, const RingMatrix& a) {
    RingElement det = ring.zero();
    for (int j = 0; j < 3; ++j) {
        const RingElement term = ring.mul(a.at(0, j), minor(ring, a, 0, j));
        det = (j % 2 == 0) ? ring.add(det, term) : ring.sub(det, term);
    }
    return det;
}

bool is_invertible(const GaloisRing& ring, const RingMatrix& a) { return ring.is_unit(determinant(ring, a)); }

RingMatrix inverse(const GaloisRing& ring, const RingMatrix& a) {
    const RingElement det = determinant(ring, a);
    if (!ring.is_unit(det)) throw std::domain_error("matrix is singular over " + ring.spec().to_string());
    const RingElement inv_det = ring.inverse(det);
    RingMatrix result;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // adj(a)_{ij} = (-1)^{i+j} minor_{ji}
            RingElement cof = minor(ring, a, j, i);
            if ((i + j) % 2 == 1) cof = ring.neg(cof);
            result.at(i, j) = ring.mul(inv_det, cof);
        }
    }
    return result;
}

bool is_scalar(const GaloisRing& ring, const RingMatrix& a) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && a.at(i, j) != ring.zero()) return false;
    return a.at(0, 0) == a.at(1, 1) && a.at(1, 1) == a.at(2, 2);
}

RingMatrix residue(const GaloisRing& ring, const RingMatrix& a) {
    RingMatrix bar;
    for (std::size_t i = 0; i < a.entries.size(); ++i) bar.entries[i] = ring.residue(a.entries[i]);
    return bar;
}

std::uint64_t projective_order(const GaloisRing& ring, const RingMatrix& a, std::uint64_t limit) {
    RingMatrix current = a;
    for (std::uint64_t t = 1; t <= limit; ++t) {
        if (is_scalar(ring, current)) return t;
        current = multiply(ring, current, a);
    }
    return 0;
}

HomogeneousVector apply(const GaloisRing& ring, const RingMatrix& a, const HomogeneousVector& v) {
    HomogeneousVector out;
    for (int i = 0; i < 3; ++i) out[i] = dot(ring, {a.at(i, 0), a.at(i, 1), a.at(i, 2)}, v);
    return out;
}

HomogeneousVector apply_row(const GaloisRing& ring, const HomogeneousVector& l, const RingMatrix& a) {
    HomogeneousVector out;
    for (int j = 0; j < 3; ++j) out[j] = dot(ring, l, {a.at(0, j), a.at(1, j), a.at(2, j)});
    return out;
}

PointIndex act_on_point(const PlaneModel& plane, const RingMatrix& a, PointIndex point) {
    if (!is_invertible(plane.ring(), a)) throw std::domain_error("act_on_point: singular matrix");
    return plane.point_index(apply(plane.ring(), a, plane.point(point).rep));
}

LineIndex act_on_line(const PlaneModel& plane, const RingMatrix& a, LineIndex line) {
    const RingMatrix inv = inverse(plane.ring(), a);
    return plane.line_index(apply_row(plane.ring(), plane.line(line).rep, inv));
}

std::vector<PointIndex> point_permutation(const PlaneModel& plane, const RingMatrix& a) {
    if (!is_invertible(plane.ring(), a)) throw std::domain_error("point_permutation: singular matrix");
    std::vector<PointIndex> perm(plane.num_points());
    for (const Point& P : plane.points()) perm[P.index] = plane.point_index(apply(plane.ring(), a, P.rep));
    return perm;
}

std::vector<LineIndex> line_permutation(const PlaneModel& plane, const RingMatrix& a) {
    const RingMatrix inv = inverse(plane.ring(), a);
    std::vector<LineIndex> perm(plane.num_lines());
    for (const Line& L : plane.lines()) perm[L.index] = plane.line_index(apply_row(plane.ring(), L.rep, inv));
    return perm;
}

namespace {

void close_orbits(const std::vector<std::vector<std::uint32_t>>& perms, std::size_t n,
                  std::vector<std::vector<std::uint32_t>>& orbits, std::vector<std::uint32_t>& orbit_of) {
    constexpr auto kUnseen = static_cast<std::uint32_t>(-1);
    orbit_of.assign(n, kUnseen);
    orbits.clear();
    for (std::uint32_t start = 0; start < n; ++start) {
        if (orbit_of[start] != kUnseen) continue;
        const auto id = static_cast<std::uint32_t>(orbits.size());
        std::vector<std::uint32_t> orbit{start};
        orbit_of[start] = id;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            for (const auto& perm : perms) {
                const std::uint32_t image = perm[orbit[head]];
                if (orbit_of[image] == kUnseen) {
                    orbit_of[image] = id;
                    orbit.push_back(image);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
}

}  // namespace

OrbitPartition compute_orbits(const PlaneModel& plane, std::span<const RingMatrix> generators) {
    std::vector<std::vector<std::uint32_t>> point_perms, line_perms;
    for (const RingMatrix& g : generators) {
        point_perms.push_back(point_permutation(plane, g));
        line_perms.push_back(line_permutation(plane, g));
    }
    OrbitPartition partition;
    close_orbits(point_perms, plane.num_points(), partition.point_orbits, partition.point_orbit_of);
    close_orbits(line_perms, plane.num_lines(), partition.line_orbits, partition.line_orbit_of);
    if (partition.point_orbits.size() != partition.line_orbits.size())
        throw std::runtime_error("compute_orbits: " + std::to_string(partition.point_orbits.size()) +
                                 " point orbits but " + std::to_string(partition.line_orbits.size()) +
                                 " line orbits");
    return partition;
}

CondensedSystem condense(const PlaneModel& plane, const OrbitPartition& partition, std::size_t representative) {
    const std::size_t k = partition.size();
    CondensedSystem system;
    system.points_per_line = plane.points_per_line();
    system.matrix.assign(k, std::vector<int>(k, 0));
    for (const auto& orbit : partition.point_orbits) system.orbit_sizes.push_back(orbit.size());
    for (std::size_t i = 0; i < k; ++i) {
        const auto& orbit = partition.line_orbits[i];
        system.line_orbit_sizes.push_back(orbit.size());
        const LineIndex rep = orbit[std::min(representative, orbit.size() - 1)];
        for (PointIndex P : plane.points_on_line(rep)) ++system.matrix[i][partition.point_orbit_of[P]];
    }
    return system;
}

RingMatrix singer_lift(const GaloisRing& ring) {
    const GaloisRing& field = ring.residue_field();
    const PlaneModel pg(field.spec());
    const std::size_t target = pg.num_points();
    const auto elements = field.elements();

    for (RingElement a2 : elements) {
        for (RingElement a1 : elements) {
            for (RingElement a0 : elements) {
                if (a0 == field.zero()) continue;
                // Companion matrix of X^3 + a2 X^2 + a1 X + a0.
                RingMatrix c = RingMatrix::scalar(field, field.zero());
                c.at(1, 0) = field.one();
                c.at(2, 1) = field.one();
                c.at(0, 2) = field.neg(a0);
                c.at(1, 2) = field.neg(a1);
                c.at(2, 2) = field.neg(a2);

                // Transitive iff the orbit of point 0 is everything.
                std::size_t length = 1;
                PointIndex current = act_on_point(pg, c, 0);
                while (current != 0 && length <= target) {
                    current = act_on_point(pg, c, current);
                    ++length;
                }
                if (length != target) continue;

                RingMatrix lifted;
                for (std::size_t i = 0; i < c.entries.size(); ++i) lifted.entries[i] = ring.lift(c.entries[i]);
                const std::uint64_t order = projective_order(ring, lifted);
                if (order == 0 || order % target != 0) throw std::logic_error("singer_lift: unexpected order");
                RingMatrix result = power(ring, lifted, order / target);
                if (projective_order(ring, result) != target) throw std::logic_error("singer_lift: order mismatch");
                return result;
            }
        }
    }
    throw std::logic_error("singer_lift: no Singer cycle found over " + field.spec().to_string());
}

std::vector<RingMatrix> resolve_generators(const GaloisRing& ring, const GroupDirective& group) {
    if (std::holds_alternative<TrivialGroup>(group)) return {};
    if (std::holds_alternative<SingerGroup>(group)) return {singer_lift(ring)};
    const auto& gens = std::get<std::vector<RingMatrix>>(group);
    for (const RingMatrix& g : gens) {
        for (RingElement e : g.entries)
            if (e.id >= static_cast<std::uint32_t>(ring.order()))
                throw std::invalid_argument("generator entry outside " + ring.spec().to_string());
        if (!is_invertible(ring, g)) throw std::domain_error("generator matrix is singular");
    }
    return gens;
}

std::string describe(const GroupDirective& group) {
    if (std::holds_alternative<TrivialGroup>(group)) return "trivial";
    if (std::holds_alternative<SingerGroup>(group)) return "singer";
    return std::to_string(std::get<std::vector<RingMatrix>>(group).size()) + " explicit generator(s)";
}

}  // namespace hjelmslev
