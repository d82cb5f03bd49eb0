#pragma once

#include <string>
#include <vector>

namespace ghznet {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    double worst_error = 0.0;
    int cases = 0;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_passed() const;
    std::string to_json() const;
};

// Formula-vs-oracle suite: runs the closed-form fidelity expressions against
// the dense simulator on ideal and random noisy inputs.
// `trials` scales the number of random instances per check.
VerifyReport run_verification_suite(int trials = 50, std::uint64_t seed = 20240901);

}  // namespace ghznet
