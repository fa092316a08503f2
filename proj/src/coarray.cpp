#include "rmra/coarray.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rmra/errors.hpp"

namespace rmra {

std::uint64_t WeightFunction::symmetric_sum() const noexcept {
    if (counts_.empty()) return 0;
    std::uint64_t positive = std::accumulate(counts_.begin() + 1, counts_.end(), std::uint64_t{0});
    return counts_.front() + 2 * positive;
}

WeightFunction weight_function(const SensorArray& a) {
    const auto pos = a.positions();
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(a.aperture()) + 1, 0);
    counts[0] = static_cast<std::uint32_t>(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            ++counts[static_cast<std::size_t>(pos[j] - pos[i])];
        }
    }
    return WeightFunction(std::move(counts));
}

Coarray coarray(const WeightFunction& w) {
    Coarray out;
    const auto table = w.table();
    std::vector<int> positive;
    for (int m = 0; m <= w.max_lag(); ++m) {
        if (table[static_cast<std::size_t>(m)] > 0) {
            positive.push_back(m);
        } else {
            out.holes.push_back(m);
        }
    }
    out.lags.reserve(2 * positive.size());
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
        if (*it != 0) out.lags.push_back(-*it);
    }
    out.lags.insert(out.lags.end(), positive.begin(), positive.end());
    out.dof = static_cast<int>(out.lags.size());
    return out;
}

Coarray coarray(const SensorArray& a) { return coarray(weight_function(a)); }

WeightFunction weight_after_removal(const SensorArray& a, const WeightFunction& w, int s) {
    if (!a.contains(s)) {
        throw UnknownSensor("position " + std::to_string(s) + " is not in the array");
    }
    std::vector<std::uint32_t> counts(w.table().begin(), w.table().end());
    --counts[0];
    for (int t : a.positions()) {
        if (t == s) continue;
        --counts[static_cast<std::size_t>(t > s ? t - s : s - t)];
    }
    return WeightFunction(std::move(counts));
}

PrimaryWeights primary_weights(const SensorArray& a) {
    if (a.aperture() < 3) {
        throw ApertureTooSmall("primary weights need an aperture of at least 3");
    }
    const auto w = weight_function(a);
    return {w(1), w(2), w(3)};
}

}  // namespace rmra
