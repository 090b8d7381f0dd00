#pragma once

// The acceptance battery: ten groups of exact checks with time limits.

#include <string>
#include <vector>

namespace rht {

struct CriterionResult {
    int id = 0;
    std::string key;   // short name used by --only
    std::string title;
    bool pass = false;
    double seconds = 0;
    double limit = 0;
    std::string detail; // first failure, or a one-line summary on success
};

struct VerifyOptions {
    std::vector<std::string> only; // keys or numbers; empty = all
    bool inject_sign_bug = false;  // drop Koszul signs while the battery runs
    std::string data_dir;          // defaults to the build-time data directory
};

/// Keys in order: koszul, integration, s2-model, table, whitehead,
/// signatures, hopf, massey, classification, obstruction.
std::vector<std::string> criterion_keys();

std::vector<CriterionResult> run_verification(const VerifyOptions& options = {});

} // namespace rht
