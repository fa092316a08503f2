#include "rmra/robustness.hpp"

#include <numeric>
#include <string>

#include "rmra/errors.hpp"

namespace rmra {

namespace {

__extension__ typedef unsigned __int128 LagMask;
constexpr int kMaskLags = 128;

constexpr LagMask bit(int i) { return LagMask{1} << i; }
constexpr LagMask low_bits(int count) {
    return count >= kMaskLags ? ~LagMask{0} : bit(count) - 1;
}

// Lags realized by `sensors` (bit m set for lag m > 0). Pairs are counted
// once each; `twice` collects lags seen from at least two pairs.
inline void scan_lags(LagMask sensors, std::span<const int> positions, int skip, LagMask& once,
                      LagMask& twice) {
    for (int s : positions) {
        if (s == skip) continue;
        const LagMask d = (sensors >> s) & ~LagMask{1};
        twice |= once & d;
        once |= d;
    }
}

bool is_tfrsa_masked(std::span<const int> positions) {
    const int L = positions.back();
    LagMask sensors = 0;
    for (int s : positions) sensors |= bit(s);

    LagMask once = 0;
    LagMask twice = 0;
    scan_lags(sensors, positions, -1, once, twice);
    // Lag L is realized only by (0, L), so w(L) = 1 holds by construction.
    const LagMask inner = low_bits(L) & ~LagMask{1};
    if ((twice & inner) != inner) return false;

    const LagMask all = low_bits(L + 1) & ~LagMask{1};
    for (std::size_t i = 1; i + 1 < positions.size(); ++i) {
        const int s = positions[i];
        LagMask survive = 0;
        LagMask unused = 0;
        scan_lags(sensors & ~bit(s), positions, s, survive, unused);
        if ((survive & all) != all) return false;
    }
    return true;
}

}  // namespace

Fragility make_fragility(int essential, int n) {
    const int g = std::gcd(essential, n);
    if (g == 0) return {0, 1};
    return {essential / g, n / g};
}

std::optional<int> first_weak_lag(const WeightFunction& w) {
    const int L = w.max_lag();
    for (int m = 1; m < L; ++m) {
        if (w(m) < 2) return m;
    }
    if (L >= 1 && w(L) != 1) return L;
    return std::nullopt;
}

bool check_healthy(const WeightFunction& w) {
    return w.max_lag() >= 1 && !first_weak_lag(w).has_value();
}

FailureVerdict check_failure(const SensorArray& a, const WeightFunction& w, int s) {
    if (!a.contains(s)) {
        throw UnknownSensor("position " + std::to_string(s) + " is not in the array");
    }
    if (a.is_endpoint(s)) {
        throw EndpointFailureUndefined("failure of endpoint sensor " + std::to_string(s) +
                                       " is outside the single-failure rule");
    }
    const auto reduced = weight_after_removal(a, w, s);
    for (int m = 0; m <= reduced.max_lag(); ++m) {
        if (reduced(m) == 0) return {false, m};
    }
    return {};
}

FailureVerdict check_failure(const SensorArray& a, int s) {
    return check_failure(a, weight_function(a), s);
}

namespace {

std::vector<int> essential_from_weights(const SensorArray& a, const WeightFunction& w) {
    std::vector<int> out;
    for (int s : a.positions()) {
        const auto reduced = weight_after_removal(a, w, s);
        // Removal can only drop lags, so the lag set changes iff some present
        // lag falls to zero.
        for (int m = 0; m <= w.max_lag(); ++m) {
            if (w(m) > 0 && reduced(m) == 0) {
                out.push_back(s);
                break;
            }
        }
    }
    return out;
}

}  // namespace

std::vector<int> essential_sensors(const SensorArray& a) {
    if (a.size() < 3) throw TooSmall("essential sensors need at least three sensors");
    return essential_from_weights(a, weight_function(a));
}

RobustnessReport assess(const SensorArray& a, AssessMode mode) {
    RobustnessReport report;
    const auto w = weight_function(a);
    report.first_weak_lag = first_weak_lag(w);
    report.healthy_ok = !report.first_weak_lag.has_value();

    const bool early = mode == AssessMode::early_exit;
    bool failures_ok = true;
    if (!(early && !report.healthy_ok)) {
        for (int s : a.positions()) {
            if (a.is_endpoint(s)) continue;
            auto verdict = check_failure(a, w, s);
            failures_ok = failures_ok && verdict.ok;
            report.per_sensor.push_back({s, verdict});
            if (early && !verdict.ok) break;
        }
    }
    // Two sensors leave [1, L-1] uncovered for L >= 2; L = 1 is the only
    // two-sensor case reaching here and it has no interior to protect.
    report.is_tfrsa = report.healthy_ok && failures_ok && a.size() >= 3;

    if (!early) {
        report.essential = a.size() >= 3 ? essential_from_weights(a, w) : a.vec();
        report.fragility = make_fragility(static_cast<int>(report.essential.size()), a.size());
    }
    return report;
}

bool is_tfrsa(std::span<const int> positions) {
    if (positions.size() < 3) return false;
    if (positions.back() < kMaskLags) return is_tfrsa_masked(positions);
    return assess(SensorArray::from_normalized({positions.begin(), positions.end()}),
                  AssessMode::early_exit)
        .is_tfrsa;
}

}  // namespace rmra
