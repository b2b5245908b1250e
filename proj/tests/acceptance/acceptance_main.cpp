#include <filesystem>
#include <iostream>

#include "acceptance/criteria.hpp"

int main(int argc, char** argv) {
    const std::filesystem::path scratch =
        argc > 1 ? std::filesystem::path(argv[1]) : std::filesystem::temp_directory_path() / "hjelmslev-acceptance";
    std::filesystem::remove_all(scratch);
    const auto results = acceptance::run_all(scratch, std::cout);
    const bool ok = acceptance::all_passed(results);
    std::cout << (ok ? "all acceptance criteria passed" : "acceptance FAILED") << std::endl;
    return ok ? 0 : 1;
}
