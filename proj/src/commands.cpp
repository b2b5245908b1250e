#include "hjelmslev/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hjelmslev/json_io.hpp"

namespace hjelmslev {

using nlohmann::json;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SearchStatus status_from_name(const std::string& name) {
    if (name == "found") return SearchStatus::Found;
    if (name == "infeasible") return SearchStatus::Infeasible;
    return SearchStatus::Inconclusive;
}

json record_to_json(const ResultRecord& record) {
    json j;
    j["format"] = "hjelmslev-result/1";
    j["digest"] = record.digest;
    j["config"] = record.canonical_config;
    j["ring"] = record.ring.to_string();
    j["kind"] = record.kind == ArcKind::Projective ? "projective" : "multiarc";
    j["results"] = json::array();
    for (const UResult& r : record.results) {
        json e{{"u", r.u},
               {"status", to_string(r.status)},
               {"optimal", r.optimal},
               {"max_intersection", r.max_intersection},
               {"nodes", r.nodes},
               {"seconds", r.seconds}};
        e["n"] = r.n ? json(*r.n) : json(nullptr);
        e["certificate"] = r.certificate.empty() ? json(nullptr) : json(r.certificate.filename().string());
        j["results"].push_back(e);
    }
    return j;
}

}  // namespace

ResultRecord run_search(const RunConfig& config) {
    validate(config);
    const auto ring = std::make_shared<const GaloisRing>(config.ring);
    const PlaneModel plane(ring);
    const auto generators = resolve_generators(*ring, config.group);
    const OrbitPartition partition = compute_orbits(plane, generators);

    ResultRecord record;
    record.digest = config_digest(config);
    record.canonical_config = canonical_text(config);
    record.ring = config.ring;
    record.kind = config.kind;

    for (int u = config.u_min; u <= config.u_max; ++u) {
        SearchProblem problem;
        problem.system = condense(plane, partition);
        problem.u = u;
        problem.mode = config.mode;
        problem.n = config.n.value_or(0);
        problem.kind = config.kind;
        problem.multiplicity_cap = config.multiplicity_cap;
        problem.budget = config.budget;
        problem.workers = config.workers;
        problem.split_depth = config.split_depth;

        const SearchResult result = solve(problem);
        UResult entry;
        entry.u = u;
        entry.status = result.status;
        entry.optimal = result.optimal;
        entry.nodes = result.nodes;
        entry.seconds = result.seconds;
        if (result.solution) {
            ArcCertificate cert =
                make_certificate(plane, describe(config.group), generators, partition, problem, *result.solution);
            cert.config_digest = record.digest;
            const VerificationReport check = verify_certificate(cert);
            if (!check.ok) throw std::logic_error("solver produced an arc that fails verification:\n" + format_report(check));
            const auto path = fresh_path(config.out, "arc-" + record.digest + "-u" + std::to_string(u) + "-n" +
                                                         std::to_string(result.solution->n));
            save_certificate(cert, path);
            entry.n = result.solution->n;
            entry.max_intersection = result.solution->max_intersection;
            entry.certificate = path;
        }
        record.results.push_back(entry);
    }

    record.path = fresh_path(config.out, "result-" + record.digest);
    write_text(record.path, record_to_json(record).dump(1) + "\n");
    return record;
}

int search_exit_code(const ResultRecord& record) {
    bool inconclusive = false, missing = false;
    for (const UResult& r : record.results) {
        if (r.status == SearchStatus::Inconclusive) inconclusive = true;
        if (r.status != SearchStatus::Found) missing = true;
    }
    if (inconclusive) return 3;
    return missing ? 2 : 0;
}

ResultRecord load_result_record(const std::filesystem::path& path) {
    try {
        const json j = json::parse(read_text(path));
        if (j.value("format", "") != "hjelmslev-result/1") throw std::runtime_error("not a result record");
        ResultRecord record;
        record.path = path;
        record.digest = j.at("digest").get<std::string>();
        record.canonical_config = j.at("config").get<std::string>();
        record.ring = parse_ring_spec(j.at("ring").get<std::string>());
        record.kind = j.at("kind").get<std::string>() == "multiarc" ? ArcKind::Multiarc : ArcKind::Projective;
        for (const json& e : j.at("results")) {
            UResult r;
            r.u = e.at("u").get<int>();
            r.status = status_from_name(e.at("status").get<std::string>());
            r.optimal = e.at("optimal").get<bool>();
            r.max_intersection = e.at("max_intersection").get<int>();
            r.nodes = e.at("nodes").get<std::uint64_t>();
            r.seconds = e.at("seconds").get<double>();
            if (!e.at("n").is_null()) r.n = e.at("n").get<std::int64_t>();
            if (!e.at("certificate").is_null())
                r.certificate = path.parent_path() / e.at("certificate").get<std::string>();
            record.results.push_back(r);
        }
        return record;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed result record " + path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("malformed result record " + path.string() + ": " + e.what());
    }
}

ResultTable build_table(const std::vector<std::filesystem::path>& inputs) {
    std::vector<std::filesystem::path> files;
    for (const auto& input : inputs) {
        if (std::filesystem::is_directory(input)) {
            for (const auto& entry : std::filesystem::directory_iterator(input)) {
                const auto name = entry.path().filename().string();
                if (entry.is_regular_file() && name.starts_with("result-") && name.ends_with(".json"))
                    files.push_back(entry.path());
            }
        } else {
            files.push_back(input);
        }
    }
    std::sort(files.begin(), files.end());

    ResultTable table;
    std::map<std::string, GaloisRingSpec> rings;
    for (const auto& file : files) {
        ResultRecord record;
        try {
            record = load_result_record(file);
        } catch (const std::exception& e) {
            table.rejected.push_back(e.what());
            continue;
        }
        if (record.kind != ArcKind::Projective) continue;
        const std::string column = short_name(record.ring);
        for (const UResult& r : record.results) {
            if (!r.n || r.certificate.empty()) continue;
            try {
                const ArcCertificate cert = load_certificate(r.certificate);
                const VerificationReport check = verify_certificate(cert);
                if (!check.ok || cert.n != *r.n || cert.u != r.u || cert.kind != ArcKind::Projective) {
                    table.rejected.push_back(r.certificate.string() + ": does not verify");
                    continue;
                }
            } catch (const std::exception& e) {
                table.rejected.push_back(r.certificate.string() + ": " + e.what());
                continue;
            }
            rings.emplace(column, record.ring);
            TableCell& cell = table.rows[r.u][column];
            if (cell.certificate.empty() || *r.n > cell.n || (*r.n == cell.n && r.optimal && !cell.optimal))
                cell = TableCell{*r.n, r.optimal, r.certificate};
        }
    }
    for (const auto& [name, spec] : rings) table.columns.push_back(spec);
    std::sort(table.columns.begin(), table.columns.end(), [](const GaloisRingSpec& a, const GaloisRingSpec& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.characteristic() < b.characteristic();
    });
    return table;
}

std::string table_text(const ResultTable& table) {
    if (table.rows.empty()) return "";
    std::ostringstream os;
    constexpr int kWidth = 10;
    os << std::setw(4) << "u";
    for (const auto& spec : table.columns) os << std::setw(kWidth) << short_name(spec);
    os << "\n";
    os << std::setw(4) << "|P|";
    for (const auto& spec : table.columns) {
        const long q = spec.q();
        long points = (q * q + q + 1);
        for (int i = 1; i < spec.m; ++i) points *= q * q;
        os << std::setw(kWidth) << points;
    }
    os << "\n";
    for (const auto& [u, cells] : table.rows) {
        os << std::setw(4) << u;
        for (const auto& spec : table.columns) {
            const auto it = cells.find(short_name(spec));
            std::string text = it == cells.end() ? "" : std::to_string(it->second.n) + (it->second.optimal ? "!" : "");
            os << std::setw(kWidth) << text;
        }
        os << "\n";
    }
    os << "(! = exhaustively shown maximal for the prescribed group)\n";
    return os.str();
}

std::string table_csv(const ResultTable& table) {
    std::ostringstream os;
    os << "u,ring,n,optimal,certificate\n";
    for (const auto& [u, cells] : table.rows)
        for (const auto& spec : table.columns)
            if (const auto it = cells.find(short_name(spec)); it != cells.end())
                os << u << "," << short_name(spec) << "," << it->second.n << "," << (it->second.optimal ? 1 : 0) << ","
                   << it->second.certificate.string() << "\n";
    return os.str();
}

std::string table_json(const ResultTable& table) {
    json j;
    j["columns"] = json::array();
    for (const auto& spec : table.columns) j["columns"].push_back(short_name(spec));
    j["cells"] = json::array();
    for (const auto& [u, cells] : table.rows)
        for (const auto& [ring, cell] : cells)
            j["cells"].push_back({{"u", u},
                                  {"ring", ring},
                                  {"n", cell.n},
                                  {"optimal", cell.optimal},
                                  {"certificate", cell.certificate.string()}});
    j["rejected"] = table.rejected;
    return j.dump(1) + "\n";
}

json to_json(const CodeReport& report) {
    json j;
    j["ring"] = report.spec.to_string();
    j["ring_code"] = {report.ring_code.n, report.ring_code.k, report.ring_code.d};
    j["enumerator"] = json::array();
    for (const auto& [w, c] : report.enumerator) j["enumerator"].push_back({w, c});
    j["gray"] = {{"q", report.q},
                 {"length", report.gray_length},
                 {"words", report.gray_words},
                 {"dimension", report.gray_dimension ? json(*report.gray_dimension) : json(nullptr)},
                 {"min_distance", report.gray_min_distance},
                 {"distance_invariant", report.distance_invariant},
                 {"exhaustive", report.exhaustive},
                 {"linear", report.linear}};
    j["griesmer"] = json::array();
    for (const auto& c : report.griesmer) j["griesmer"].push_back({c.n, c.k, c.d});
    return j;
}

CodeAnalysis analyze_code(const ArcCertificate& cert, const GrayOptions& options) {
    const VerificationReport check = verify_certificate(cert);
    if (!check.ok) throw std::runtime_error("certificate does not verify:\n" + format_report(check));
    const PlaneModel plane(cert.ring);
    CodeAnalysis analysis{code_from_arc(cert.points, plane), {}, {}, {}};
    analysis.image = gray_image(analysis.code, options);
    analysis.report = code_report(analysis.code, analysis.image);
    analysis.ktypes = ktype_census(cert.points, plane);
    return analysis;
}

std::string format_code_report(const CodeAnalysis& analysis) {
    const CodeReport& r = analysis.report;
    std::ostringstream os;
    os << "ring code: [" << r.ring_code.n << "," << r.ring_code.k << "," << r.ring_code.d << "] over "
       << short_name(r.spec) << " (homogeneous weight)\n";
    os << "weight enumerator:";
    for (const auto& [w, c] : r.enumerator) os << " " << w << ":" << c;
    os << "\nline k-types:";
    for (const auto& [type, lines] : analysis.ktypes) {
        os << " " << lines << "x(";
        for (std::size_t i = 0; i < type.size(); ++i) os << (i ? "," : "") << type[i];
        os << ")";
    }
    os << "\nGray image over F" << r.q << ": length " << r.gray_length << ", " << r.gray_words << " words";
    if (r.gray_dimension) os << " (q^" << *r.gray_dimension << ")";
    os << ", minimum distance " << r.gray_min_distance << (r.exhaustive ? "" : " (sampled)") << "\n";
    os << "distance invariant: " << (r.distance_invariant ? "yes" : "no") << (r.exhaustive ? "" : " (sampled)")
       << ", linear: " << (r.linear ? "yes" : "no") << "\n";
    if (!r.griesmer.empty()) {
        os << "Griesmer residuals:";
        for (std::size_t i = 0; i < r.griesmer.size(); ++i)
            os << (i ? " -> " : " ") << "[" << r.griesmer[i].n << "," << r.griesmer[i].k << "," << r.griesmer[i].d << "]";
        os << "\n";
    }
    return os.str();
}

std::string code_report_json(const CodeAnalysis& analysis) {
    json j = to_json(analysis.report);
    j["ktypes"] = json::array();
    for (const auto& [type, lines] : analysis.ktypes) j["ktypes"].push_back({{"type", type}, {"lines", lines}});
    return j.dump(1) + "\n";
}

void export_gray_words(const GrayImage& image, const std::filesystem::path& path) {
    std::ostringstream os;
    const bool digits = image.q <= 10;
    for (const auto& word : image.words) {
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (!digits && i) os << ' ';
            os << static_cast<int>(word[i]);
        }
        os << '\n';
    }
    write_text(path, os.str());
}

}  // namespace hjelmslev
