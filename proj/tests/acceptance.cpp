// Acceptance gate: runs the full verification registry and prints exactly
// one PASS/FAIL line per acceptance criterion (1..10), aggregating the
// registry checks that belong to each criterion.  A criterion passes when
// all of its checks pass and, where a wall-clock budget is defined, the
// combined runtime stays inside it.  Exit code 0 iff every criterion passes.

#include <cstdio>
#include <string>
#include <vector>

#include "rho/verify.hpp"

namespace {

const char* criterion_label(int c) {
    switch (c) {
        case 1: return "exact trace identities";
        case 2: return "generating-jet derivation gate";
        case 3: return "mean entropy";
        case 4: return "two-point suite";
        case 5: return "Bures sampler correctness";
        case 6: return "asymptotic densities";
        case 7: return "Green/Pastur";
        case 8: return "spectral convergence";
        case 9: return "moment ordering";
        case 10: return "entropy correlation";
        default: return "?";
    }
}

} // namespace

int main() {
    const auto results = rho::run_checks("all");
    bool all_ok = true;

    for (int c = 1; c <= 10; ++c) {
        double elapsed = 0.0;
        bool pass = true;
        int members = 0;
        std::string failures;
        for (const auto& r : results) {
            if (r.criterion != c) continue;
            ++members;
            elapsed += r.elapsed_s;
            if (!r.pass) {
                pass = false;
                failures += "\n    FAILED " + r.name + ": " + r.detail;
            }
        }
        if (members == 0) {
            pass = false;
            failures = "\n    no checks registered";
        }
        const double budget = rho::criterion_budget_s(c);
        char timing[64];
        if (budget > 0.0) {
            if (elapsed > budget) {
                pass = false;
                failures += "\n    over budget";
            }
            std::snprintf(timing, sizeof timing, "%.2f s, budget %.0f s", elapsed, budget);
        } else {
            std::snprintf(timing, sizeof timing, "%.2f s", elapsed);
        }

        std::printf("ACCEPTANCE CRITERION %2d [%s]: %s (%s)%s\n", c, criterion_label(c),
                    pass ? "PASS" : "FAIL", timing, failures.c_str());
        if (!pass) all_ok = false;
    }

    std::printf("%s\n", all_ok ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES PRESENT");
    return all_ok ? 0 : 1;
}
