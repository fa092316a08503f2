#include <doctest.h>

#include "oracle.hpp"
#include "rmra/cfe.hpp"
#include "rmra/coarray.hpp"
#include "rmra/errors.hpp"
#include "rmra/robustness.hpp"

using rmra::SensorArray;

TEST_CASE("family members") {
    CHECK(rmra::cfe_array(8).array == SensorArray{0, 1, 4, 5, 7, 8, 9, 10});
    CHECK(rmra::cfe_array(11).array == SensorArray{0, 1, 2, 3, 4, 10, 11, 16, 17, 21, 22});
    CHECK(rmra::cfe_array(12).array == SensorArray{0, 1, 2, 3, 4, 5, 12, 13, 19, 20, 25, 26});

    const auto c100 = rmra::cfe_array(100);
    CHECK(c100.p == 94);
    const auto pos = c100.array.positions();
    REQUIRE(pos.size() == 100);
    for (int i = 0; i <= 93; ++i) CHECK(pos[static_cast<std::size_t>(i)] == i);
    CHECK(std::vector<int>(pos.begin() + 94, pos.end()) ==
          std::vector<int>{188, 189, 283, 284, 377, 378});

    CHECK_THROWS_AS(rmra::cfe_array(7), rmra::BelowMinimumSize);
    CHECK_THROWS_AS(rmra::cfe_aperture(7), rmra::BelowMinimumSize);
    CHECK_THROWS_AS(rmra::cfe_dof(0), rmra::BelowMinimumSize);
}

TEST_CASE("aperture and dof formulas") {
    CHECK(rmra::cfe_aperture(8) == 10);
    CHECK(rmra::cfe_aperture(11) == 22);
    CHECK(rmra::cfe_aperture(12) == 26);
    CHECK(rmra::cfe_dof(8) == 21);
    CHECK(rmra::cfe_dof(12) == 53);
    for (int n = 8; n <= 200; ++n) {
        CHECK(rmra::cfe_dof(n) == 2 * rmra::cfe_aperture(n) + 1);
        const auto c = rmra::cfe_array(n);
        CHECK(c.array.aperture() == c.aperture);
        CHECK(rmra::coarray(c.array).dof == c.dof);
    }
}

TEST_CASE("primary weights of large members") {
    // Brute force on the 100-sensor member gives w(1) = 96 = n - 4.
    const auto a = rmra::cfe_array(100).array;
    CHECK(rmra::primary_weights(a).w1 == 96);
    CHECK(static_cast<int>(rmra::primary_weights(a).w1) == oracle::weight_table(a.vec())[1]);
    // n = 8 picks up an extra unit spacing between 3p+2 and 4p+1.
    CHECK(rmra::primary_weights(rmra::cfe_array(8).array).w1 == 5);
    for (int n = 9; n <= 60; ++n) {
        CHECK(rmra::primary_weights(rmra::cfe_array(n).array).w1 == static_cast<std::uint32_t>(n - 4));
    }
}

TEST_CASE("inter-element spacing notation") {
    CHECK(rmra::format_ies(rmra::cfe_array(8).ies) == "{1, 3, 1, 2, 1, 1, 1}");
    CHECK(rmra::format_ies(rmra::cfe_array(11).ies) == "{1^4, 6, 1, 5, 1, 4, 1}");
    CHECK(rmra::spacings(rmra::cfe_array(8).array) == std::vector<int>{1, 3, 1, 2, 1, 1, 1});
    CHECK(rmra::ies_of(rmra::uniform_array(5)) == std::vector<rmra::SpacingRun>{{1, 4}});
    CHECK(rmra::format_ies(rmra::ies_of(rmra::cfe_array(11).array)) == "{1^4, 6, 1, 5, 1, 4, 1}");
    CHECK(rmra::format_ies(rmra::ies_of(rmra::cfe_array(8).array)) == "{1, 3, 1, 2, 1^3}");

    for (int n = 8; n <= 120; ++n) {
        const auto c = rmra::cfe_array(n);
        CHECK(rmra::from_ies(c.ies) == c.array);
        CHECK(rmra::from_ies(rmra::ies_of(c.array)) == c.array);
        int sum = 0;
        for (const auto& run : c.ies) sum += run.spacing * run.count;
        CHECK(sum == c.aperture);
    }
}

TEST_CASE("members are TFRSAs with two essential sensors") {
    for (int n = 8; n <= 40; ++n) {
        const auto c = rmra::cfe_array(n);
        const auto r = rmra::assess(c.array);
        CHECK(r.is_tfrsa);
        CHECK(r.essential == std::vector<int>{0, c.aperture});
        CHECK(r.fragility == rmra::make_fragility(2, n));
        if (n <= 14) CHECK(oracle::is_tfrsa(c.array.vec()));
    }
}

TEST_CASE("validate_range") {
    const auto small = rmra::validate_range(8, 8);
    CHECK(small.mega_count == 0);
    CHECK(small.failures.empty());

    const auto wide = rmra::validate_range(8, 120);
    CHECK(wide.mega_count == 0);
    CHECK(wide.n_lo == 8);
    CHECK(wide.n_hi == 120);

    CHECK_THROWS_AS(rmra::validate_range(7, 20), rmra::BelowMinimumSize);
}

TEST_CASE("corrupted generator is caught") {
    // Position 2p moved to 2p+3. Frozen from the definition-level oracle over
    // 8..50: every size fails except n = 10.
    auto corrupted = [](int n) {
        const int p = n - 6;
        std::vector<int> s;
        for (int i = 0; i < p; ++i) s.push_back(i);
        for (int v : {2 * p + 3, 2 * p + 1, 3 * p + 1, 3 * p + 2, 4 * p + 1, 4 * p + 2}) s.push_back(v);
        return SensorArray(s);
    };
    const auto summary = rmra::validate_range(8, 50, corrupted);
    CHECK(summary.mega_count == 42);
    CHECK(summary.failures.size() == 42);
    for (const auto& f : summary.failures) CHECK(f.n != 10);
    for (int n : {8, 9, 10, 11, 12, 13}) {
        const bool failed = std::any_of(summary.failures.begin(), summary.failures.end(),
                                        [&](const auto& f) { return f.n == n; });
        CHECK(failed == !oracle::is_tfrsa(corrupted(n).vec()));
    }
}
