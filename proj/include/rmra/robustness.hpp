#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rmra/array.hpp"
#include "rmra/coarray.hpp"

namespace rmra {

/// Outcome of removing one interior sensor.
struct FailureVerdict {
    bool ok = true;
    std::optional<int> first_hole;  ///< smallest lag lost, when !ok

    friend bool operator==(const FailureVerdict&, const FailureVerdict&) = default;
};

struct SensorVerdict {
    int position = 0;
    FailureVerdict verdict;
};

/// Reduced fraction |essential| / n.
struct Fragility {
    int numerator = 0;
    int denominator = 1;

    [[nodiscard]] double value() const noexcept {
        return static_cast<double>(numerator) / denominator;
    }
    friend bool operator==(const Fragility&, const Fragility&) = default;
};

Fragility make_fragility(int essential, int n);

enum class AssessMode {
    full,        ///< every interior sensor checked, essential set computed
    early_exit,  ///< stops at the first violated constraint; essential left empty
};

struct RobustnessReport {
    bool healthy_ok = false;
    std::optional<int> first_weak_lag;     ///< smallest lag in [1, L] breaking the healthy rule
    std::vector<SensorVerdict> per_sensor;  ///< interior sensors, ascending position
    std::vector<int> essential;
    Fragility fragility;
    bool is_tfrsa = false;
};

/// w(i) >= 2 on [1, L-1] and w(L) == 1, with L = w.max_lag(). Lag 0 is not checked.
bool check_healthy(const WeightFunction& w);

/// First lag in [1, L] violating the healthy rule, if any.
std::optional<int> first_weak_lag(const WeightFunction& w);

/// Removal of interior sensor `s` must leave every lag in [0, L] realized.
/// Throws EndpointFailureUndefined for s in {0, L} and UnknownSensor when absent.
FailureVerdict check_failure(const SensorArray& a, int s);
FailureVerdict check_failure(const SensorArray& a, const WeightFunction& w, int s);

RobustnessReport assess(const SensorArray& a, AssessMode mode = AssessMode::full);

/// Sensors whose removal changes the coarray lag set. Throws TooSmall when n < 3.
std::vector<int> essential_sensors(const SensorArray& a);

/// Verdict-only TFRSA test for the search hot loop.
///
/// `positions` must be strictly increasing, start at 0 and end at `aperture`.
/// Apertures below 128 are handled with lag bitmasks; larger ones fall back to
/// weight tables.
bool is_tfrsa(std::span<const int> positions);

}  // namespace rmra
