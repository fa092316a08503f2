#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rmra/array.hpp"

namespace rmra {

/// One run of the inter-element spacing sequence: `spacing` repeated `count` times.
struct SpacingRun {
    int spacing = 0;
    int count = 1;

    friend bool operator==(const SpacingRun&, const SpacingRun&) = default;
};

/// Member of the closed-form sub-optimal family: a (n-6)-sensor ULA followed by
/// six sparse sensors at 2p, 2p+1, 3p+1, 3p+2, 4p+1, 4p+2 with p = n - 6.
struct CfeArray {
    int n = 0;
    int p = 0;
    SensorArray array{0, 1};
    int aperture = 0;             ///< 4n - 22
    int dof = 0;                  ///< 8n - 43
    std::vector<SpacingRun> ies;  ///< {1^(p-1), p+1, 1, p, 1, p-1, 1}
};

/// Throws BelowMinimumSize for n < 8.
CfeArray cfe_array(int n);
int cfe_aperture(int n);
int cfe_dof(int n);

/// Consecutive position differences.
std::vector<int> spacings(const SensorArray& a);

/// Spacings with consecutive runs of 1 collapsed; other spacings stay single.
std::vector<SpacingRun> ies_of(const SensorArray& a);

/// Rebuilds positions (starting at 0) from a spacing sequence.
SensorArray from_ies(const std::vector<SpacingRun>& ies);

/// "{1^4, 6, 1, 5, 1, 4, 1}"
std::string format_ies(const std::vector<SpacingRun>& ies);

struct ValidationFailure {
    int n = 0;
    std::string reason;  ///< "generator", "aperture", "healthy" or "failure"
    std::string detail;
};

struct ValidationSummary {
    int n_lo = 0;
    int n_hi = 0;
    int mega_count = 0;  ///< == failures.size()
    std::vector<ValidationFailure> failures;
};

using ArrayGenerator = std::function<SensorArray(int n)>;

/// Builds the family member for every n in [n_lo, n_hi] and runs the full
/// robustness assessment, counting the sizes that fail.
ValidationSummary validate_range(int n_lo, int n_hi);

/// As above with an arbitrary generator; only the robustness rules are checked.
ValidationSummary validate_range(int n_lo, int n_hi, const ArrayGenerator& generator);

}  // namespace rmra
