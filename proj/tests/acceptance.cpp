// Acceptance gate: one line per criterion, exit status 1 if any is red.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "qcp/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20240601;
    int bits = 192;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        else if (!std::strcmp(argv[i], "--prec") && i + 1 < argc) bits = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "-v")) verbose = true;
    }
    int red = 0;
    for (auto& crit : qcp::acceptance_criteria(seed, bits)) {
        qcp::CriterionResult r;
        try {
            r = qcp::run_criterion(crit);
        } catch (const std::exception& e) {
            std::printf("criterion %2d: FAIL  %s (error: %s)\n", crit.id, crit.title.c_str(), e.what());
            ++red;
            continue;
        }
        const char* tag = !r.pass() ? "FAIL" : r.corrected() ? "PASS (resolved-with-correction)" : "PASS";
        std::printf("criterion %2d: %s  %s [%zu checks, %d failing, %.1f s of %.0f s]\n", r.id, tag, r.title.c_str(),
                    r.checks.size(), r.failures(), r.seconds, r.budget_s);
        if (r.seconds > r.budget_s) std::printf("    over the runtime budget\n");
        for (auto& c : r.checks)
            if (!c.pass || verbose || c.corrected)
                std::printf("    %s %s: %s | %s\n", c.pass ? (c.corrected ? "corr" : "ok  ") : "FAIL", c.id.c_str(),
                            c.residual.substr(0, 160).c_str(), c.note.substr(0, 240).c_str());
        std::fflush(stdout);
        red += !r.pass();
    }
    std::printf("acceptance: %d of 11 criteria red\n", red);
    return red ? 1 : 0;
}
