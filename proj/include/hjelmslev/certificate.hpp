#ifndef HJELMSLEV_CERTIFICATE_HPP
#define HJELMSLEV_CERTIFICATE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hjelmslev/arc_search.hpp"
#include "hjelmslev/group_orbits.hpp"

namespace hjelmslev {

/**
 * A self-contained record of one arc: everything needed to rebuild the
 * plane and re-check the arc without the solver.
 */
struct ArcCertificate {
    GaloisRingSpec ring;
    std::string group_directive = "trivial";
    std::vector<RingMatrix> generators;
    int u = 0;
    std::int64_t n = 0;
    ArcKind kind = ArcKind::Projective;
    int multiplicity_cap = 1;
    std::vector<int> x;
    std::vector<std::size_t> orbit_sizes;
    /// One entry per point occurrence, ascending index.
    std::vector<PointIndex> points;
    std::vector<HomogeneousVector> coordinates;
    std::map<int, std::size_t> secants;
    int max_intersection = 0;
    bool attains_u = false;
    std::string solver_mode = "fixed-n";
    Budget budget;
    std::string config_digest;
};

/// Builds a certificate for a solver result. Coordinates and the secant
/// distribution are computed from the plane.
ArcCertificate make_certificate(const PlaneModel& plane, const std::string& group_directive,
                                const std::vector<RingMatrix>& generators, const OrbitPartition& partition,
                                const SearchProblem& problem, const ArcSolution& solution);

/// Certificate for an arbitrary point multiset (no orbit data).
ArcCertificate make_point_certificate(const PlaneModel& plane, std::vector<PointIndex> points, int u,
                                      ArcKind kind);

std::string to_json_text(const ArcCertificate& cert);
/// Throws std::runtime_error on malformed input.
ArcCertificate certificate_from_json_text(const std::string& text);

void save_certificate(const ArcCertificate& cert, const std::filesystem::path& path);
ArcCertificate load_certificate(const std::filesystem::path& path);

/// `dir/stem.json`, or `dir/stem-2.json`, `-3`, ... if taken; files are never
/// overwritten.
std::filesystem::path fresh_path(const std::filesystem::path& dir, const std::string& stem);

struct VerificationReport {
    bool ok = false;
    std::vector<std::string> problems;
    ArcReport arc;
    std::map<int, std::size_t> secants;
    bool invariant = false;
};

/// Re-checks a certificate from scratch: point coordinates, size, the arc
/// property with u, attainment, projectivity, secant distribution, group
/// invariance and (when present) the orbit selection.
VerificationReport verify_certificate(const ArcCertificate& cert);

std::string format_report(const VerificationReport& report);

}  // namespace hjelmslev

#endif  // HJELMSLEV_CERTIFICATE_HPP
