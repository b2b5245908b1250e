#ifndef HJELMSLEV_RUN_CONFIG_HPP
#define HJELMSLEV_RUN_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "hjelmslev/arc_search.hpp"
#include "hjelmslev/group_orbits.hpp"

namespace hjelmslev {

/**
 * Everything a search run depends on.
 *
 * The text form is one `key = value` pair per line, `#` starts a comment.
 * Values are JSON literals or bare words:
 *
 *     ring = G16
 *     group = singer
 *     u = 8                 # or a range: u = [2, 5]
 *     mode = fixed-n        # or maximize
 *     n = 126
 *     arc = projective      # or multiarc
 *     multiplicity-cap = 2
 *     budget-nodes = 0      # 0 = unlimited
 *     budget-seconds = 60
 *     workers = 1
 *     split-depth = 6
 *     out = results
 *
 * `group` is `trivial`, `singer`, or a list of 3x3 matrices whose entries
 * are integers (r = 1) or coefficient lists.
 */
struct RunConfig {
    GaloisRingSpec ring;
    GroupDirective group = TrivialGroup{};
    /// JSON text of explicit generators, kept so that they can be re-read
    /// when the ring is set after the group.
    std::string group_source;
    int u_min = 0;
    int u_max = 0;
    SearchMode mode = SearchMode::Maximize;
    std::optional<std::int64_t> n;
    ArcKind kind = ArcKind::Projective;
    int multiplicity_cap = 0;
    Budget budget;
    int workers = 1;
    int split_depth = 6;
    std::filesystem::path out = "results";
};

/// Parses the text form; unset keys keep their defaults. Throws
/// std::invalid_argument with the offending key on error.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Applies one `key = value` setting (the same keys as the file form).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Throws std::invalid_argument unless the config is complete and consistent.
void validate(const RunConfig& config);

/// Canonical text of the settings that determine the search result
/// (everything except out and workers).
std::string canonical_text(const RunConfig& config);

/// 16 hex digits of FNV-1a over canonical_text.
std::string config_digest(const RunConfig& config);

}  // namespace hjelmslev

#endif  // HJELMSLEV_RUN_CONFIG_HPP
