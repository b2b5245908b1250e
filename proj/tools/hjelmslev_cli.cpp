// Command line front end: search, verify, code-report, table, plane,
// reproduce-paper.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "acceptance/criteria.hpp"
#include "hjelmslev/commands.hpp"

namespace {

using namespace hjelmslev;

int cmd_search(const std::string& config_path, const std::vector<std::pair<std::string, std::string>>& overrides) {
    RunConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    // Ring first: explicit generators are read against it.
    for (const auto& [key, value] : overrides)
        if (key == "ring") apply_setting(config, key, value);
    for (const auto& [key, value] : overrides)
        if (key != "ring") apply_setting(config, key, value);
    validate(config);

    const ResultRecord record = run_search(config);
    std::cout << "config digest " << record.digest << "\n";
    for (const UResult& r : record.results) {
        std::cout << "u=" << r.u << ": " << to_string(r.status);
        if (r.n) std::cout << " n=" << *r.n << (r.optimal ? " (optimal)" : "") << " max-intersection=" << r.max_intersection;
        std::cout << " nodes=" << r.nodes << " seconds=" << r.seconds;
        if (!r.certificate.empty()) std::cout << " certificate=" << r.certificate.string();
        std::cout << "\n";
    }
    std::cout << "record " << record.path.string() << "\n";
    return search_exit_code(record);
}

int cmd_verify(const std::string& path) {
    const ArcCertificate cert = load_certificate(path);
    const VerificationReport report = verify_certificate(cert);
    std::cout << format_report(report);
    return report.ok ? 0 : 1;
}

int cmd_code_report(const std::string& path, const std::string& json_out, const std::string& gray_out,
                    std::size_t full_check_limit) {
    GrayOptions options;
    options.full_check_limit = full_check_limit;
    const CodeAnalysis analysis = analyze_code(load_certificate(path), options);
    std::cout << format_code_report(analysis);
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << code_report_json(analysis);
        if (!out) throw std::runtime_error("cannot write " + json_out);
    }
    if (!gray_out.empty()) export_gray_words(analysis.image, gray_out);
    return 0;
}

int cmd_table(const std::vector<std::string>& inputs, const std::string& csv_out, const std::string& json_out) {
    std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
    const ResultTable table = build_table(paths);
    std::cout << table_text(table);
    for (const auto& r : table.rejected) std::cerr << "rejected: " << r << "\n";
    if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        out << table_csv(table);
    }
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << table_json(table);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arcs in projective Hjelmslev planes over Galois rings"};
    app.require_subcommand(1);

    auto* search = app.add_subcommand("search", "Search for arcs under a prescribed group");
    std::string config_path;
    search->add_option("--config", config_path, "Config file (key = value lines)");
    std::vector<std::pair<std::string, std::string>> overrides;
    auto add_override = [&](const std::string& flag, const std::string& key, const std::string& help) {
        search->add_option_function<std::string>(
            flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
    };
    add_override("--ring", "ring", "Ring, e.g. Z25, G16, GR(16,4)");
    add_override("--group", "group", "trivial, singer, or a JSON list of matrices");
    add_override("--u", "u", "u, or a range [lo,hi]");
    add_override("--n", "n", "Target size for fixed-n mode");
    add_override("--mode", "mode", "fixed-n or maximize");
    add_override("--multiplicity-cap", "multiplicity-cap", "Largest orbit multiplicity in multiarc mode");
    add_override("--budget-nodes", "budget-nodes", "Node limit (0 = none)");
    add_override("--budget-seconds", "budget-seconds", "Wall-clock limit (0 = none)");
    add_override("--workers", "workers", "Worker threads");
    add_override("--split-depth", "split-depth", "Depth at which the search tree is split into tasks");
    add_override("--out", "out", "Output directory");
    search->add_flag_callback("--multiarc", [&] { overrides.emplace_back("arc", "multiarc"); }, "Allow repeated points");

    auto* verify = app.add_subcommand("verify", "Re-check an arc certificate");
    std::string cert_path;
    verify->add_option("certificate", cert_path)->required();

    auto* code = app.add_subcommand("code-report", "Ring-linear code and Gray image of a certified arc");
    std::string code_cert, json_out, gray_out;
    std::size_t full_check_limit = GrayOptions{}.full_check_limit;
    code->add_option("certificate", code_cert)->required();
    code->add_option("--json", json_out, "Write the report as JSON");
    code->add_option("--export-gray", gray_out, "Write the Gray image words, one per line");
    code->add_option("--full-check-limit", full_check_limit, "Exhaustive distance-invariance check up to this many words");

    auto* table = app.add_subcommand("table", "Aggregate verified results into a table");
    std::vector<std::string> table_inputs;
    std::string csv_out, table_json_out;
    table->add_option("inputs", table_inputs, "Result records or directories")->required();
    table->add_option("--csv", csv_out, "Write CSV");
    table->add_option("--json", table_json_out, "Write JSON");

    auto* plane = app.add_subcommand("plane", "Dump the points and lines of PHG(2,R)");
    std::string plane_ring;
    plane->add_option("ring", plane_ring)->required();

    auto* reproduce = app.add_subcommand("reproduce-paper", "Run the acceptance checks");
    std::string scratch = "reproduce-out";
    reproduce->add_option("--out", scratch, "Directory for certificates written by the checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*search) return cmd_search(config_path, overrides);
        if (*verify) return cmd_verify(cert_path);
        if (*code) return cmd_code_report(code_cert, json_out, gray_out, full_check_limit);
        if (*table) return cmd_table(table_inputs, csv_out, table_json_out);
        if (*plane) {
            std::cout << hjelmslev::PlaneModel(hjelmslev::parse_ring_spec(plane_ring)).dump();
            return 0;
        }
        if (*reproduce) {
            const auto results = acceptance::run_all(scratch, std::cout);
            return acceptance::all_passed(results) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
