#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmra/array.hpp"

namespace rmra {

/// Lag -> pair count over [0, L]. Negative lags are implied by w(-m) = w(m).
///
/// w(0) counts self-pairs (= n); every positive lag counts unordered pairs,
/// so w(L) = 1 for any array.
class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {}

    /// Largest stored lag.
    [[nodiscard]] int max_lag() const noexcept { return static_cast<int>(counts_.size()) - 1; }
    /// w(m) for any integer m; zero outside [-max_lag, max_lag].
    [[nodiscard]] std::uint32_t operator()(int m) const noexcept {
        const int a = m < 0 ? -m : m;
        return a < static_cast<int>(counts_.size()) ? counts_[static_cast<std::size_t>(a)] : 0;
    }
    [[nodiscard]] std::span<const std::uint32_t> table() const noexcept { return counts_; }

    /// Sum of w(m) over m in [-max_lag, max_lag]; n^2 for an intact array.
    [[nodiscard]] std::uint64_t symmetric_sum() const noexcept;

    friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

private:
    std::vector<std::uint32_t> counts_;
};

/// Distinct lags and holes of a difference coarray.
struct Coarray {
    std::vector<int> lags;   ///< sorted, symmetric about 0
    std::vector<int> holes;  ///< lags in [0, L] not realized
    int dof = 0;             ///< |lags|

    [[nodiscard]] bool hole_free() const noexcept { return holes.empty(); }
};

struct PrimaryWeights {
    std::uint32_t w1 = 0;
    std::uint32_t w2 = 0;
    std::uint32_t w3 = 0;

    friend bool operator==(const PrimaryWeights&, const PrimaryWeights&) = default;
};

WeightFunction weight_function(const SensorArray& a);

/// Coarray of the lags present in `w` (holes taken over [0, w.max_lag()]).
Coarray coarray(const WeightFunction& w);
Coarray coarray(const SensorArray& a);

/// Weight function of `a` with sensor `s` removed, derived from `w` in O(n).
/// The table keeps the original length; lags beyond the surviving aperture read 0.
/// Throws UnknownSensor when `s` is not a sensor of `a`.
WeightFunction weight_after_removal(const SensorArray& a, const WeightFunction& w, int s);

/// (w(1), w(2), w(3)); throws ApertureTooSmall when L < 3.
PrimaryWeights primary_weights(const SensorArray& a);

}  // namespace rmra
