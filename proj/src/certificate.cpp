#include "hjelmslev/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hjelmslev/json_io.hpp"

namespace hjelmslev {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "hjelmslev-arc-certificate/1";

const char* kind_name(ArcKind kind) { return kind == ArcKind::Projective ? "projective" : "multiarc"; }

ArcKind kind_from_name(const std::string& name) {
    if (name == "projective") return ArcKind::Projective;
    if (name == "multiarc") return ArcKind::Multiarc;
    throw std::runtime_error("certificate: unknown arc kind '" + name + "'");
}

}  // namespace

json element_to_json(const GaloisRing& ring, RingElement e) {
    const auto c = ring.coeffs(e);
    if (c.size() == 1) return c[0];
    return c;
}

RingElement element_from_json(const GaloisRing& ring, const json& j) {
    if (j.is_number_integer()) {
        if (ring.r() != 1) throw std::runtime_error("ring element needs " + std::to_string(ring.r()) + " coefficients");
        const long v = j.get<long>();
        if (v < 0 || v >= ring.characteristic()) throw std::runtime_error("ring element out of range");
        return ring.from_int(v);
    }
    if (!j.is_array()) throw std::runtime_error("ring element must be an integer or a coefficient list");
    const auto c = j.get<std::vector<int>>();
    try {
        return ring.from_coeffs(c);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(e.what());
    }
}

json vector_to_json(const GaloisRing& ring, const HomogeneousVector& v) {
    return json::array({element_to_json(ring, v[0]), element_to_json(ring, v[1]), element_to_json(ring, v[2])});
}

HomogeneousVector vector_from_json(const GaloisRing& ring, const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::runtime_error("coordinate vector must have 3 entries");
    return {element_from_json(ring, j[0]), element_from_json(ring, j[1]), element_from_json(ring, j[2])};
}

json matrix_to_json(const GaloisRing& ring, const RingMatrix& a) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) rows.push_back(vector_to_json(ring, {a.at(i, 0), a.at(i, 1), a.at(i, 2)}));
    return rows;
}

RingMatrix matrix_from_json(const GaloisRing& ring, const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::runtime_error("matrix must have 3 rows");
    RingMatrix a;
    for (int i = 0; i < 3; ++i) {
        const auto row = vector_from_json(ring, j[static_cast<std::size_t>(i)]);
        for (int k = 0; k < 3; ++k) a.at(i, k) = row[static_cast<std::size_t>(k)];
    }
    return a;
}

ArcCertificate make_point_certificate(const PlaneModel& plane, std::vector<PointIndex> points, int u, ArcKind kind) {
    std::sort(points.begin(), points.end());
    ArcCertificate cert;
    cert.ring = plane.ring().spec();
    cert.u = u;
    cert.kind = kind;
    cert.multiplicity_cap = kind == ArcKind::Projective ? 1 : u;
    cert.n = static_cast<std::int64_t>(points.size());
    for (PointIndex P : points) cert.coordinates.push_back(plane.point(P).rep);
    cert.secants = secant_distribution(points, plane);
    const ArcReport report = verify_arc(points, plane, u);
    cert.max_intersection = report.max_line_count;
    cert.attains_u = report.attains_u;
    cert.points = std::move(points);
    return cert;
}

ArcCertificate make_certificate(const PlaneModel& plane, const std::string& group_directive,
                                const std::vector<RingMatrix>& generators, const OrbitPartition& partition,
                                const SearchProblem& problem, const ArcSolution& solution) {
    ArcCertificate cert = make_point_certificate(plane, expand(solution.x, partition), problem.u, problem.kind);
    cert.group_directive = group_directive;
    cert.generators = generators;
    cert.multiplicity_cap = problem.kind == ArcKind::Projective
                                ? 1
                                : (problem.multiplicity_cap > 0 ? std::min(problem.multiplicity_cap, problem.u) : problem.u);
    cert.x = solution.x;
    cert.orbit_sizes = problem.system.orbit_sizes;
    cert.solver_mode = problem.mode == SearchMode::FixedN ? "fixed-n" : "maximize";
    cert.budget = problem.budget;
    return cert;
}

std::string to_json_text(const ArcCertificate& cert) {
    const GaloisRing ring(cert.ring);
    json j;
    j["format"] = kFormat;
    j["ring"] = cert.ring.to_string();
    j["group"] = {{"directive", cert.group_directive}, {"generators", json::array()}};
    for (const RingMatrix& g : cert.generators) j["group"]["generators"].push_back(matrix_to_json(ring, g));
    j["u"] = cert.u;
    j["n"] = cert.n;
    j["kind"] = kind_name(cert.kind);
    j["multiplicity_cap"] = cert.multiplicity_cap;
    j["x"] = cert.x;
    j["orbit_sizes"] = cert.orbit_sizes;
    j["points"] = json::array();
    for (std::size_t i = 0; i < cert.points.size(); ++i)
        j["points"].push_back({{"index", cert.points[i]}, {"coords", vector_to_json(ring, cert.coordinates[i])}});
    j["secant_distribution"] = json::array();
    for (const auto& [count, lines] : cert.secants) j["secant_distribution"].push_back({count, lines});
    j["max_intersection"] = cert.max_intersection;
    j["attains_u"] = cert.attains_u;
    j["solver"] = {{"mode", cert.solver_mode},
                   {"budget_nodes", cert.budget.max_nodes},
                   {"budget_seconds", cert.budget.max_seconds}};
    j["config_digest"] = cert.config_digest;
    return j.dump(1) + "\n";
}

ArcCertificate certificate_from_json_text(const std::string& text) {
    try {
        const json j = json::parse(text);
        if (j.value("format", "") != kFormat) throw std::runtime_error("not an arc certificate");
        ArcCertificate cert;
        cert.ring = parse_ring_spec(j.at("ring").get<std::string>());
        const GaloisRing ring(cert.ring);
        cert.group_directive = j.at("group").value("directive", "trivial");
        for (const json& g : j.at("group").at("generators")) cert.generators.push_back(matrix_from_json(ring, g));
        cert.u = j.at("u").get<int>();
        cert.n = j.at("n").get<std::int64_t>();
        cert.kind = kind_from_name(j.at("kind").get<std::string>());
        cert.multiplicity_cap = j.value("multiplicity_cap", 1);
        cert.x = j.value("x", std::vector<int>{});
        cert.orbit_sizes = j.value("orbit_sizes", std::vector<std::size_t>{});
        for (const json& p : j.at("points")) {
            cert.points.push_back(p.at("index").get<PointIndex>());
            cert.coordinates.push_back(vector_from_json(ring, p.at("coords")));
        }
        for (const json& s : j.at("secant_distribution")) cert.secants[s.at(0).get<int>()] = s.at(1).get<std::size_t>();
        cert.max_intersection = j.at("max_intersection").get<int>();
        cert.attains_u = j.at("attains_u").get<bool>();
        const json& solver = j.at("solver");
        cert.solver_mode = solver.value("mode", "fixed-n");
        cert.budget.max_nodes = solver.value("budget_nodes", std::uint64_t{0});
        cert.budget.max_seconds = solver.value("budget_seconds", 0.0);
        cert.config_digest = j.value("config_digest", "");
        return cert;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed certificate: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("malformed certificate: ") + e.what());
    }
}

void save_certificate(const ArcCertificate& cert, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_json_text(cert);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

ArcCertificate load_certificate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return certificate_from_json_text(buf.str());
}

std::filesystem::path fresh_path(const std::filesystem::path& dir, const std::string& stem) {
    auto path = dir / (stem + ".json");
    for (int i = 2; std::filesystem::exists(path); ++i) path = dir / (stem + "-" + std::to_string(i) + ".json");
    return path;
}

VerificationReport verify_certificate(const ArcCertificate& cert) {
    VerificationReport report;
    auto fail = [&](std::string message) { report.problems.push_back(std::move(message)); };

    const PlaneModel plane(cert.ring);
    const GaloisRing& ring = plane.ring();

    if (cert.points.size() != cert.coordinates.size()) fail("point list and coordinate list differ in length");
    std::vector<PointIndex> points;
    for (std::size_t i = 0; i < cert.coordinates.size(); ++i) {
        const auto found = plane.find_point(cert.coordinates[i]);
        if (!found) {
            fail("entry " + std::to_string(i) + ": " + format_vector(ring, cert.coordinates[i]) + " is not a point");
            continue;
        }
        if (i < cert.points.size() && cert.points[i] != *found)
            fail("entry " + std::to_string(i) + ": index " + std::to_string(cert.points[i]) +
                 " does not match coordinates of point " + std::to_string(*found));
        points.push_back(*found);
    }
    if (static_cast<std::int64_t>(points.size()) != cert.n)
        fail("arc has " + std::to_string(points.size()) + " points, certificate claims n = " + std::to_string(cert.n));

    report.arc = verify_arc(points, plane, cert.u);
    report.secants = secant_distribution(points, plane);
    if (!report.arc.is_arc)
        fail("line " + std::to_string(report.arc.worst_line) + " " +
             format_vector(ring, plane.line(report.arc.worst_line).rep) + " meets the arc in " +
             std::to_string(report.arc.max_line_count) + " points, more than u = " + std::to_string(cert.u));
    if (report.arc.max_line_count != cert.max_intersection)
        fail("maximum line intersection is " + std::to_string(report.arc.max_line_count) + ", certificate claims " +
             std::to_string(cert.max_intersection));
    if (report.arc.attains_u != cert.attains_u) fail("u attainment does not match the certificate");
    if (cert.kind == ArcKind::Projective && !report.arc.projective) fail("projective arc has a repeated point");
    if (report.secants != cert.secants) fail("secant distribution does not match the certificate");

    try {
        for (const RingMatrix& g : cert.generators)
            if (!is_invertible(ring, g)) throw std::domain_error("singular generator");
        report.invariant = is_invariant(points, plane, cert.generators);
        if (!report.invariant) fail("arc is not invariant under the group generators");
        if (!cert.x.empty()) {
            const OrbitPartition partition = compute_orbits(plane, cert.generators);
            if (cert.x.size() != partition.size()) {
                fail("orbit selection has " + std::to_string(cert.x.size()) + " entries for " +
                     std::to_string(partition.size()) + " orbits");
            } else {
                std::vector<PointIndex> sorted = points;
                std::sort(sorted.begin(), sorted.end());
                if (expand(cert.x, partition) != sorted) fail("orbit selection x does not expand to the point list");
            }
        }
    } catch (const std::exception& e) {
        fail(std::string("group check failed: ") + e.what());
    }

    report.ok = report.problems.empty();
    return report;
}

std::string format_report(const VerificationReport& report) {
    std::ostringstream os;
    os << (report.ok ? "PASS" : "FAIL") << ": " << report.arc.size << " points, max line intersection "
       << report.arc.max_line_count << (report.arc.projective ? ", projective" : ", with multiplicities")
       << ", group invariant: " << (report.invariant ? "yes" : "no") << "\n";
    os << "secant distribution:";
    for (const auto& [count, lines] : report.secants) os << " " << count << ":" << lines;
    os << "\n";
    for (const auto& p : report.problems) os << "  problem: " << p << "\n";
    return os.str();
}

}  // namespace hjelmslev
