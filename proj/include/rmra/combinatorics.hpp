#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rmra {

using Count = std::uint64_t;

/// Exact C(n, k). DomainError for k > n, negatives or n > 10^4; Overflow when
/// the result does not fit in 64 bits.
Count binomial(int n, int k);

/// Inclusive integer range [lo, hi] that subsets are drawn from.
struct Universe {
    int lo = 0;
    int hi = -1;

    [[nodiscard]] int size() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
};

/// Streams the k-subsets of a universe in lexicographic order with O(k) state.
///
/// Not thread-safe; parallel consumers each own a cursor started at a
/// different rank.
class CombinationCursor {
public:
    CombinationCursor(Universe universe, int k);
    /// Starts at the subset of lexicographic rank `start`; RankError if out of range.
    CombinationCursor(Universe universe, int k, Count start);

    /// Returns the current subset and advances; nullopt once exhausted.
    std::optional<std::vector<int>> next();

    [[nodiscard]] bool exhausted() const noexcept { return exhausted_; }
    /// Current subset without copying. Valid while !exhausted().
    [[nodiscard]] std::span<const int> current() const noexcept { return current_; }
    /// Moves to the lexicographic successor; sets exhausted after the last one.
    void advance() noexcept;

private:
    Universe universe_;
    int k_;
    std::vector<int> current_;
    bool exhausted_ = false;
};

/// r-th k-subset of `universe` in lexicographic order.
std::vector<int> unrank(Universe universe, int k, Count r);

/// Inverse of unrank. DomainError when `subset` is not an increasing
/// k-subset of `universe`.
Count rank(Universe universe, int k, std::span<const int> subset);

}  // namespace rmra
