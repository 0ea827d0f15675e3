// Acceptance suite: runs every verification criterion at full size and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <iostream>

#include "maxcomm/verify.hpp"

int main() {
    const maxcomm::VerifyReport report = maxcomm::run_verification(&std::cout);
    for (const auto& c : report.criteria) {
        std::cerr << "criterion " << c.id << " took " << c.seconds << " s\n";
    }
    const bool ok = report.all_pass();
    std::cout << (ok ? "acceptance: all criteria passed\n"
                     : "acceptance: FAILURES present\n");
    return ok ? 0 : 1;
}
