#pragma once

#include <string>
#include <vector>

namespace meanext {

// One replayed numeric checkpoint: an equality (|computed-expected| <= tol)
// or an inequality/containment described by `expected`.
struct ReproCase {
    std::string id;
    std::string description;
    std::string expected;  // e.g. "0.6875", "< 2", "in [0.784, 0.7855]"
    double computed = 0.0;
    double tolerance = 0.0;  // 0 for inequality-style cases
    bool pass = false;
};

// Replays every numeric example and counterexample the library is built
// around. Failures are data, not exceptions.
std::vector<ReproCase> repro_suite();

}  // namespace meanext
