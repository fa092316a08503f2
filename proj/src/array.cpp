#include "rmra/array.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <ostream>
#include <sstream>

#include "rmra/errors.hpp"

namespace rmra {

SensorArray::SensorArray(std::vector<int> positions) {
    std::ranges::sort(positions);
    auto dup = std::ranges::unique(positions);
    positions.erase(dup.begin(), dup.end());
    if (positions.size() < 2) {
        throw InvalidArray("a sensor array needs at least two distinct positions");
    }
    const int origin = positions.front();
    for (int& p : positions) p -= origin;
    positions_ = std::move(positions);
}

SensorArray SensorArray::from_normalized(std::vector<int> positions) {
    assert(positions.size() >= 2 && positions.front() == 0);
    assert(std::ranges::adjacent_find(positions, std::greater_equal<>{}) == positions.end());
    return SensorArray(Normalized{}, std::move(positions));
}

bool SensorArray::contains(int position) const noexcept {
    return std::ranges::binary_search(positions_, position);
}

SensorArray SensorArray::mirror() const {
    const int L = aperture();
    std::vector<int> out(positions_.rbegin(), positions_.rend());
    for (int& p : out) p = L - p;
    return SensorArray(Normalized{}, std::move(out));
}

SensorArray SensorArray::without(int position) const {
    if (!contains(position)) {
        throw UnknownSensor("position " + std::to_string(position) + " is not in the array");
    }
    std::vector<int> rest;
    rest.reserve(positions_.size() - 1);
    std::ranges::copy_if(positions_, std::back_inserter(rest), [&](int p) { return p != position; });
    return SensorArray(std::move(rest));
}

std::string SensorArray::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

SensorArray make_array(std::span<const int> positions) {
    return SensorArray(std::vector<int>(positions.begin(), positions.end()));
}

SensorArray uniform_array(int n) {
    if (n < 2) throw InvalidArray("a uniform array needs at least two sensors");
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    return SensorArray::from_normalized(std::move(p));
}

SensorArray parse_positions(const std::string& text) {
    std::vector<int> values;
    const char* cur = text.data();
    const char* end = text.data() + text.size();
    auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '[' || c == ']'; };
    while (cur < end) {
        if (is_sep(*cur)) {
            ++cur;
            continue;
        }
        int v = 0;
        auto [next, ec] = std::from_chars(cur, end, v);
        if (ec != std::errc{} || (next < end && !is_sep(*next))) {
            throw InvalidArray("cannot parse positions '" + text + "'");
        }
        values.push_back(v);
        cur = next;
    }
    return SensorArray(std::move(values));
}

std::ostream& operator<<(std::ostream& os, const SensorArray& a) {
    os << '[';
    bool first = true;
    for (int p : a.positions()) {
        if (!first) os << ',';
        os << p;
        first = false;
    }
    return os << ']';
}

}  // namespace rmra
