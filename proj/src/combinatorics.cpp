#include "rmra/combinatorics.hpp"

#include <limits>
#include <string>

#include "rmra/errors.hpp"

namespace rmra {

namespace {
constexpr int kMaxBinomialN = 10'000;
__extension__ typedef unsigned __int128 Wide;
}

Count binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n || n > kMaxBinomialN) {
        throw DomainError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                          ") is outside 0 <= k <= n <= 10000");
    }
    if (k > n - k) k = n - k;
    Wide c = 1;
    for (int i = 0; i < k; ++i) {
        // c * (n - i) / (i + 1) stays integral: c is C(n, i) before the step.
        c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
        if (c > std::numeric_limits<Count>::max()) {
            throw Overflow("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                           ") exceeds 64-bit range");
        }
    }
    return static_cast<Count>(c);
}

CombinationCursor::CombinationCursor(Universe universe, int k)
    : universe_(universe), k_(k) {
    if (k < 0) throw DomainError("subset size must be non-negative");
    if (k > universe.size()) {
        exhausted_ = true;
        return;
    }
    current_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) current_[static_cast<std::size_t>(i)] = universe.lo + i;
}

CombinationCursor::CombinationCursor(Universe universe, int k, Count start)
    : universe_(universe), k_(k), current_(unrank(universe, k, start)) {}

void CombinationCursor::advance() noexcept {
    if (exhausted_) return;
    // Rightmost element that can still move up.
    int i = k_ - 1;
    while (i >= 0 && current_[static_cast<std::size_t>(i)] == universe_.hi - (k_ - 1 - i)) --i;
    if (i < 0) {
        exhausted_ = true;
        return;
    }
    int v = ++current_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k_; ++j) current_[static_cast<std::size_t>(j)] = ++v;
}

std::optional<std::vector<int>> CombinationCursor::next() {
    if (exhausted_) return std::nullopt;
    std::vector<int> out = current_;
    advance();
    return out;
}

std::vector<int> unrank(Universe universe, int k, Count r) {
    const int n = universe.size();
    if (k < 0 || k > n) throw DomainError("subset size out of range");
    const Count total = binomial(n, k);
    if (r >= total) {
        throw RankError("rank " + std::to_string(r) + " is outside [0, " + std::to_string(total) +
                        ")");
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    int next = 0;  // offset into the universe
    for (int slot = 0; slot < k; ++slot) {
        const int remaining = k - slot - 1;
        // Skip every subset that starts with a smaller element at this slot.
        for (;; ++next) {
            const Count block = binomial(n - next - 1, remaining);
            if (r < block) break;
            r -= block;
        }
        out.push_back(universe.lo + next);
        ++next;
    }
    return out;
}

Count rank(Universe universe, int k, std::span<const int> subset) {
    const int n = universe.size();
    if (k < 0 || k > n || static_cast<int>(subset.size()) != k) {
        throw DomainError("subset size does not match k");
    }
    Count r = 0;
    int next = 0;
    for (int slot = 0; slot < k; ++slot) {
        const int offset = subset[static_cast<std::size_t>(slot)] - universe.lo;
        const int remaining = k - slot - 1;
        if (offset < next || offset > n - 1 - remaining) {
            throw DomainError("subset is not an increasing subset of the universe");
        }
        for (; next < offset; ++next) r += binomial(n - next - 1, remaining);
        ++next;
    }
    return r;
}

}  // namespace rmra
