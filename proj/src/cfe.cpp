#include "rmra/cfe.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "rmra/coarray.hpp"
#include "rmra/errors.hpp"
#include "rmra/robustness.hpp"

namespace rmra {

namespace {

constexpr int kMinimumSize = 8;

void require_size(int n) {
    if (n < kMinimumSize) {
        throw BelowMinimumSize("the closed-form family starts at n = 8, got " + std::to_string(n));
    }
}

std::optional<ValidationFailure> check_member(int n, const ArrayGenerator& generator,
                                              bool check_family_identities) {
    SensorArray a{0, 1};
    try {
        a = generator(n);
    } catch (const Error& e) {
        return ValidationFailure{n, "generator", e.what()};
    }
    const auto report = assess(a, AssessMode::full);
    if (!report.healthy_ok) {
        return ValidationFailure{n, "healthy",
                                 "weight below 2 at lag " + std::to_string(*report.first_weak_lag)};
    }
    for (const auto& sv : report.per_sensor) {
        if (!sv.verdict.ok) {
            return ValidationFailure{n, "failure",
                                     "removing " + std::to_string(sv.position) + " opens lag " +
                                         std::to_string(*sv.verdict.first_hole)};
        }
    }
    if (!report.is_tfrsa) return ValidationFailure{n, "failure", "not a TFRSA"};
    if (check_family_identities) {
        const int L = a.aperture();
        const auto dca = coarray(a);
        if (a.size() != n || L != cfe_aperture(n) || dca.dof != cfe_dof(n) || !dca.hole_free()) {
            std::ostringstream os;
            os << "n=" << a.size() << " L=" << L << " dof=" << dca.dof;
            return ValidationFailure{n, "aperture", os.str()};
        }
        if (report.essential != std::vector<int>{0, L}) {
            return ValidationFailure{n, "failure", "essential set is not {0, L}"};
        }
    }
    return std::nullopt;
}

ValidationSummary run_range(int n_lo, int n_hi, const ArrayGenerator& generator, bool family) {
    if (n_lo > n_hi) throw DomainError("empty validation range");
    const int count = n_hi - n_lo + 1;
    std::vector<std::optional<ValidationFailure>> results(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < count; i = next++) {
            results[static_cast<std::size_t>(i)] = check_member(n_lo + i, generator, family);
        }
    };
    const unsigned threads = std::clamp(std::thread::hardware_concurrency(), 1u, 16u);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
    }

    ValidationSummary summary{n_lo, n_hi, 0, {}};
    for (auto& r : results) {
        if (r) summary.failures.push_back(std::move(*r));
    }
    summary.mega_count = static_cast<int>(summary.failures.size());
    return summary;
}

}  // namespace

CfeArray cfe_array(int n) {
    require_size(n);
    const int p = n - 6;
    std::vector<int> positions;
    positions.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < p; ++i) positions.push_back(i);
    for (int s : {2 * p, 2 * p + 1, 3 * p + 1, 3 * p + 2, 4 * p + 1, 4 * p + 2}) positions.push_back(s);

    CfeArray out;
    out.n = n;
    out.p = p;
    out.array = SensorArray::from_normalized(std::move(positions));
    out.aperture = cfe_aperture(n);
    out.dof = cfe_dof(n);
    out.ies = {{1, p - 1}, {p + 1, 1}, {1, 1}, {p, 1}, {1, 1}, {p - 1, 1}, {1, 1}};
    return out;
}

int cfe_aperture(int n) {
    require_size(n);
    return 4 * n - 22;
}

int cfe_dof(int n) {
    require_size(n);
    return 8 * n - 43;
}

std::vector<int> spacings(const SensorArray& a) {
    const auto pos = a.positions();
    std::vector<int> out;
    out.reserve(pos.size() - 1);
    for (std::size_t i = 1; i < pos.size(); ++i) out.push_back(pos[i] - pos[i - 1]);
    return out;
}

std::vector<SpacingRun> ies_of(const SensorArray& a) {
    std::vector<SpacingRun> out;
    for (int d : spacings(a)) {
        if (d == 1 && !out.empty() && out.back().spacing == 1) {
            ++out.back().count;
        } else {
            out.push_back({d, 1});
        }
    }
    return out;
}

SensorArray from_ies(const std::vector<SpacingRun>& ies) {
    std::vector<int> positions{0};
    for (const auto& run : ies) {
        for (int i = 0; i < run.count; ++i) positions.push_back(positions.back() + run.spacing);
    }
    return SensorArray(std::move(positions));
}

std::string format_ies(const std::vector<SpacingRun>& ies) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < ies.size(); ++i) {
        if (i) os << ", ";
        os << ies[i].spacing;
        if (ies[i].count > 1) os << '^' << ies[i].count;
    }
    os << '}';
    return os.str();
}

ValidationSummary validate_range(int n_lo, int n_hi) {
    if (n_lo < kMinimumSize) require_size(n_lo);
    return run_range(n_lo, n_hi, [](int n) { return cfe_array(n).array; }, true);
}

ValidationSummary validate_range(int n_lo, int n_hi, const ArrayGenerator& generator) {
    return run_range(n_lo, n_hi, generator, false);
}

}  // namespace rmra
