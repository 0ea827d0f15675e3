#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxcomm {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;

    bool all_pass() const {
        for (const auto& c : criteria) {
            if (!c.pass) return false;
        }
        return true;
    }
};

/// The full desk-scale verification battery: oracle equivalence, hand
/// fixtures, the cube identities, the pointwise dominations, the Morrey
/// fixture, discrimination and sign-necessity scans, weak-type scans, and
/// report determinism. One result per criterion; `out`, when given,
/// receives a pass/fail line per criterion as they complete.
VerifyReport run_verification(std::ostream* out = nullptr);

}  // namespace maxcomm
