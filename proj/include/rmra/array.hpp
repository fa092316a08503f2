#pragma once

#include <compare>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rmra {

/// A linear sensor array on the half-wavelength integer grid.
///
/// Positions are kept sorted, distinct and translated so that the first
/// sensor sits at 0; the aperture is therefore the last position.
class SensorArray {
public:
    /// Sorts, deduplicates and shifts `positions` to the origin.
    /// Throws InvalidArray when fewer than two distinct positions remain.
    explicit SensorArray(std::vector<int> positions);
    SensorArray(std::initializer_list<int> positions)
        : SensorArray(std::vector<int>(positions)) {}

    /// Wraps positions that are already normalized; no checks beyond debug asserts.
    static SensorArray from_normalized(std::vector<int> positions);

    [[nodiscard]] std::span<const int> positions() const noexcept { return positions_; }
    [[nodiscard]] const std::vector<int>& vec() const noexcept { return positions_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(positions_.size()); }
    [[nodiscard]] int aperture() const noexcept { return positions_.back(); }
    [[nodiscard]] bool contains(int position) const noexcept;
    [[nodiscard]] bool is_endpoint(int position) const noexcept {
        return position == 0 || position == aperture();
    }

    /// s -> L - s, re-sorted.
    [[nodiscard]] SensorArray mirror() const;
    /// The array with `position` removed, renormalized. Throws UnknownSensor.
    [[nodiscard]] SensorArray without(int position) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const SensorArray&, const SensorArray&) = default;
    friend auto operator<=>(const SensorArray& a, const SensorArray& b) {
        return a.positions_ <=> b.positions_;
    }

private:
    struct Normalized {};
    SensorArray(Normalized, std::vector<int> positions) : positions_(std::move(positions)) {}

    std::vector<int> positions_;
};

SensorArray make_array(std::span<const int> positions);

/// Positions 0..n-1.
SensorArray uniform_array(int n);

/// Parses "0,1,4,5" (spaces and brackets tolerated). Throws InvalidArray.
SensorArray parse_positions(const std::string& text);

std::ostream& operator<<(std::ostream& os, const SensorArray& a);

}  // namespace rmra
