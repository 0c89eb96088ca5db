#pragma once

#include <string>
#include <vector>

namespace jacsums::verify {

struct Fact {
    std::string key;
    std::string value;
};

struct SuiteResult {
    std::string suite;
    bool pass = true;
    std::vector<Fact> facts;
};

// Canonical suite order: lemma21, factorization, weil, gauss, exact-sums,
// zero-dim, ratio, endgame, bessel.
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name);
std::vector<SuiteResult> run_all();

} // namespace jacsums::verify
