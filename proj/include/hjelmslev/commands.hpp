#ifndef HJELMSLEV_COMMANDS_HPP
#define HJELMSLEV_COMMANDS_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hjelmslev/certificate.hpp"
#include "hjelmslev/ring_codes.hpp"
#include "hjelmslev/run_config.hpp"

namespace hjelmslev {

struct UResult {
    int u = 0;
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<std::int64_t> n;
    bool optimal = false;
    int max_intersection = 0;
    std::filesystem::path certificate;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

/// Outcome of one `search` run, persisted as result-<digest>.json.
struct ResultRecord {
    std::string digest;
    std::string canonical_config;
    GaloisRingSpec ring;
    ArcKind kind = ArcKind::Projective;
    std::vector<UResult> results;
    std::filesystem::path path;
};

/// ring -> plane -> orbits -> condensed system -> solver, once per u.
/// Every found arc is re-verified and written as a certificate before it is
/// recorded. Validates the config before touching the file system.
ResultRecord run_search(const RunConfig& config);

/// 0 if every u found an arc, 3 if any run was inconclusive, 2 otherwise.
int search_exit_code(const ResultRecord& record);

ResultRecord load_result_record(const std::filesystem::path& path);

struct TableCell {
    std::int64_t n = 0;
    bool optimal = false;
    std::filesystem::path certificate;
};

/// Best verified projective arc sizes, rows u and columns rings.
struct ResultTable {
    std::vector<GaloisRingSpec> columns;
    std::map<int, std::map<std::string, TableCell>> rows;
    /// Certificates that failed re-verification or could not be read.
    std::vector<std::string> rejected;
};

/// Reads result records (files, or directories holding result-*.json) and
/// keeps only cells whose certificate re-verifies.
ResultTable build_table(const std::vector<std::filesystem::path>& inputs);
std::string table_text(const ResultTable& table);
std::string table_csv(const ResultTable& table);
std::string table_json(const ResultTable& table);

struct CodeAnalysis {
    RingLinearCode code;
    GrayImage image;
    CodeReport report;
    std::map<KType, std::size_t> ktypes;
};

/// ring_codes end to end for a certified arc.
CodeAnalysis analyze_code(const ArcCertificate& cert, const GrayOptions& options = {});
std::string format_code_report(const CodeAnalysis& analysis);
std::string code_report_json(const CodeAnalysis& analysis);
/// One word per line, symbols as residue-field element ids separated by
/// nothing when q <= 10 and by spaces otherwise.
void export_gray_words(const GrayImage& image, const std::filesystem::path& path);

}  // namespace hjelmslev

#endif  // HJELMSLEV_COMMANDS_HPP
