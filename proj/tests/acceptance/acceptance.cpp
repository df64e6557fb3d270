// Runs the acceptance checks and prints one line per criterion.
// Usage: acceptance [id ...]   (no ids: all thirteen)
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <set>
#include <string>

#include "dgbo/experiments.hpp"
#include "dgbo/io.hpp"

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    nlohmann::json all = nlohmann::json::array();
    int failed = 0;
    for (const auto& entry : dgbo::acceptance_suite()) {
        if (!only.empty() && !only.count(entry.id)) continue;
        dgbo::CriterionResult r;
        try {
            r = entry.run();
        } catch (const std::exception& e) {
            r.id = entry.id;
            r.name = entry.name;
            r.pass = false;
            r.details = {{"error", e.what()}};
        }
        if (!r.pass) ++failed;
        std::printf("[%s] criterion %2d %-36s value=%.6g %s %.6g (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.value, r.relation.c_str(), r.tolerance, r.seconds);
        if (r.details.contains("error")) std::printf("       error: %s\n", r.details["error"].get<std::string>().c_str());
        std::fflush(stdout);
        all.push_back(dgbo::to_json(r));
    }
    if (const char* dir = std::getenv("DGBO_OUTPUT_DIR")) {
        std::filesystem::create_directories(dir);
        dgbo::io::write_text_atomic(std::string(dir) + "/acceptance.json", all.dump(2) + "\n");
    }
    std::printf("%d of %zu criteria failed\n", failed, all.size());
    return failed == 0 ? 0 : 1;
}
