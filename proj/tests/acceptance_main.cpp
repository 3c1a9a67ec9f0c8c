// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include "hwl/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    hwl::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--quick") opt.quick = true;
        else if (a.rfind("--threads=", 0) == 0) opt.threads = std::atoi(a.c_str() + 10);
        else opt.only.push_back(std::atoi(a.c_str()));
    }
    if (const char* env = std::getenv("HWL_CACHE_DIR")) opt.cache_dir = env;
    int failed = 0;
    opt.on_result = [&](const hwl::CriterionResult& r) {
        std::cout << hwl::format_result(r) << std::endl;
        failed += r.passed ? 0 : 1;
    };
    hwl::run_acceptance(opt);
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
