#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qhankel/rational.hpp"

namespace qhankel {

// One verified identity/property: a stable name, a pass flag, and enough
// detail to see both sides when it fails.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    nlohmann::ordered_json config;           // echoed effective parameters
    std::vector<Check> checks;
    std::vector<std::string> notes;          // non-failing observations
    nlohmann::ordered_json data;             // suite-specific tables
    bool all_pass() const;
    const Check* first_failure() const;      // nullptr when clean
};

struct VerifyOptions {
    unsigned nmax = 0;            // 0 = per-suite default
    unsigned lmax = 0;
    unsigned mmax = 0;
    std::uint64_t seed = kDefaultSeed;
    long precision = 128;         // bits, for numeric suites
    unsigned probe_limit = 0;     // 0 = library default
    bool force = false;
};

// The fixed list of verification suites exposed by the command line.
const std::vector<std::string>& suite_names();

// Runs one named suite (UsageError for an unknown name).
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt);

// Runs every suite in suite_names() order.
std::vector<SuiteReport> run_all_suites(const VerifyOptions& opt);

// Shared single pass behind the "leading" and "degree-bounds" suites: the
// determinants are expensive, so both check groups are filled from one
// computation.  first = leading-coefficient report, second = degree report.
std::pair<SuiteReport, SuiteReport> verify_leading_and_degrees(
    const VerifyOptions& opt);

// Numeric tails vs symbolic polynomials evaluated at the numeric mu
// (acceptance-level coherence check; not part of the CLI suite list).
SuiteReport verify_numeric_coherence(const VerifyOptions& opt);

}  // namespace qhankel
