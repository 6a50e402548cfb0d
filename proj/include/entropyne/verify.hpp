// verify.hpp - oracle-backed self-check suite behind `entropyne verify`

#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace entropyne {

struct VerifyOptions {
    std::uint64_t seed = 20161019;
    bool quick = false;
    // Test hook: corrupts one measurement so the harness must report failure.
    bool inject_fault = false;
};

struct FamilyResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst-case deviation observed
    double tolerance = 0.0;  // pass iff measured <= tolerance
    std::size_t cases = 0;
    std::string detail;
};

struct VerifyReport {
    std::vector<FamilyResult> families;
    bool all_passed() const;
    nlohmann::ordered_json to_json() const;
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace entropyne
