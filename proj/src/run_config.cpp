#include "hjelmslev/run_config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hjelmslev/json_io.hpp"

namespace hjelmslev {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// JSON literal if it parses, otherwise the bare word as a string.
json parse_value(const std::string& raw) {
    const json parsed = json::parse(raw, nullptr, false);
    if (!parsed.is_discarded()) return parsed;
    return json(raw);
}

std::string as_word(const json& v, const std::string& key) {
    if (!v.is_string()) throw std::invalid_argument("config: '" + key + "' must be a word");
    return v.get<std::string>();
}

std::int64_t as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw std::invalid_argument("config: '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::string group_text(const RunConfig& config) {
    if (std::holds_alternative<TrivialGroup>(config.group)) return "trivial";
    if (std::holds_alternative<SingerGroup>(config.group)) return "singer";
    const GaloisRing ring(config.ring);
    json gens = json::array();
    for (const RingMatrix& g : std::get<std::vector<RingMatrix>>(config.group)) gens.push_back(matrix_to_json(ring, g));
    return gens.dump();
}

}  // namespace

void apply_setting(RunConfig& config, const std::string& key, const std::string& raw) {
    const json v = parse_value(trim(raw));
    try {
        if (key == "ring") {
            config.ring = parse_ring_spec(v.is_string() ? v.get<std::string>() : v.dump());
            if (!config.group_source.empty()) apply_setting(config, "group", config.group_source);
        } else if (key == "group") {
            if (v.is_string()) {
                const auto word = v.get<std::string>();
                config.group_source.clear();
                if (word == "trivial") config.group = TrivialGroup{};
                else if (word == "singer") config.group = SingerGroup{};
                else throw std::invalid_argument("config: unknown group directive '" + word + "'");
            } else if (v.is_array()) {
                const GaloisRing ring(config.ring);
                std::vector<RingMatrix> gens;
                for (const json& g : v) {
                    gens.push_back(matrix_from_json(ring, g));
                    if (!is_invertible(ring, gens.back()))
                        throw std::invalid_argument("config: group generator " + g.dump() + " is not invertible");
                }
                config.group = std::move(gens);
                config.group_source = v.dump();
            } else {
                throw std::invalid_argument("config: 'group' must be trivial, singer or a list of matrices");
            }
        } else if (key == "u") {
            if (v.is_array()) {
                if (v.size() != 2) throw std::invalid_argument("config: 'u' range must be [lo, hi]");
                config.u_min = static_cast<int>(as_int(v[0], key));
                config.u_max = static_cast<int>(as_int(v[1], key));
                if (config.u_max < config.u_min) throw std::invalid_argument("config: empty 'u' range");
            } else {
                config.u_min = config.u_max = static_cast<int>(as_int(v, key));
            }
        } else if (key == "n") {
            config.n = as_int(v, key);
        } else if (key == "mode") {
            const auto word = as_word(v, key);
            if (word == "fixed-n") config.mode = SearchMode::FixedN;
            else if (word == "maximize") config.mode = SearchMode::Maximize;
            else throw std::invalid_argument("config: unknown mode '" + word + "'");
        } else if (key == "arc") {
            const auto word = as_word(v, key);
            if (word == "projective") config.kind = ArcKind::Projective;
            else if (word == "multiarc") config.kind = ArcKind::Multiarc;
            else throw std::invalid_argument("config: unknown arc kind '" + word + "'");
        } else if (key == "multiplicity-cap") {
            config.multiplicity_cap = static_cast<int>(as_int(v, key));
        } else if (key == "budget-nodes") {
            config.budget.max_nodes = static_cast<std::uint64_t>(as_int(v, key));
        } else if (key == "budget-seconds") {
            if (!v.is_number()) throw std::invalid_argument("config: 'budget-seconds' must be a number");
            config.budget.max_seconds = v.get<double>();
        } else if (key == "workers") {
            config.workers = static_cast<int>(as_int(v, key));
        } else if (key == "split-depth") {
            config.split_depth = static_cast<int>(as_int(v, key));
        } else if (key == "out") {
            config.out = v.is_string() ? v.get<std::string>() : v.dump();
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("config: bad value for '" + key + "': " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: bad value for '" + key + "': " + e.what());
    }
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    std::vector<std::pair<std::string, std::string>> settings;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        settings.emplace_back(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    // The ring goes first, explicit generators are read against it.
    std::stable_partition(settings.begin(), settings.end(), [](const auto& kv) { return kv.first == "ring"; });
    for (const auto& [key, value] : settings) apply_setting(base, key, value);
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

void validate(const RunConfig& config) {
    (void)GaloisRing(config.ring);
    if (config.u_min < 1 || config.u_max < config.u_min)
        throw std::invalid_argument("config: u must be a positive value or range");
    if (config.mode == SearchMode::FixedN) {
        if (!config.n) throw std::invalid_argument("config: fixed-n mode needs n");
        if (*config.n < 0) throw std::invalid_argument("config: n must be nonnegative");
    }
    if (config.multiplicity_cap < 0) throw std::invalid_argument("config: multiplicity-cap must be nonnegative");
    if (config.kind == ArcKind::Projective && config.multiplicity_cap > 1)
        throw std::invalid_argument("config: multiplicity-cap needs arc = multiarc");
    if (config.workers < 1) throw std::invalid_argument("config: workers must be at least 1");
    if (config.split_depth < 0) throw std::invalid_argument("config: split-depth must be nonnegative");
    if (config.budget.max_seconds < 0) throw std::invalid_argument("config: budget-seconds must be nonnegative");
    if (auto* gens = std::get_if<std::vector<RingMatrix>>(&config.group))
        (void)resolve_generators(GaloisRing(config.ring), *gens);
}

std::string canonical_text(const RunConfig& config) {
    std::ostringstream os;
    os << "ring = " << config.ring.to_string() << "\n";
    os << "group = " << group_text(config) << "\n";
    os << "u = [" << config.u_min << ", " << config.u_max << "]\n";
    os << "mode = " << (config.mode == SearchMode::FixedN ? "fixed-n" : "maximize") << "\n";
    if (config.n) os << "n = " << *config.n << "\n";
    os << "arc = " << (config.kind == ArcKind::Projective ? "projective" : "multiarc") << "\n";
    os << "multiplicity-cap = " << config.multiplicity_cap << "\n";
    os << "budget-nodes = " << config.budget.max_nodes << "\n";
    os << "budget-seconds = " << json(config.budget.max_seconds).dump() << "\n";
    os << "split-depth = " << config.split_depth << "\n";
    return os.str();
}

std::string config_digest(const RunConfig& config) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : canonical_text(config)) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace hjelmslev
