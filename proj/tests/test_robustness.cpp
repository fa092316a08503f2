#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "rmra/errors.hpp"
#include "rmra/robustness.hpp"

using rmra::SensorArray;

TEST_CASE("healthy rule") {
    CHECK(rmra::check_healthy(rmra::weight_function(SensorArray{0, 1, 4, 5, 7, 8, 9, 10})));
    CHECK(rmra::check_healthy(rmra::weight_function(rmra::uniform_array(4))));
    for (int n = 3; n <= 15; ++n) CHECK(rmra::check_healthy(rmra::weight_function(rmra::uniform_array(n))));

    // Oracle table for [0,1,2,5,6]: w = {5,3,1,1,2,2,1}; lag 2 is the first below two.
    const auto w = rmra::weight_function(SensorArray{0, 1, 2, 5, 6});
    CHECK_FALSE(rmra::check_healthy(w));
    CHECK(rmra::first_weak_lag(w) == 2);
    CHECK(w(4) == 2);
}

TEST_CASE("single interior failure") {
    const SensorArray cfe8{0, 1, 4, 5, 7, 8, 9, 10};
    CHECK(rmra::check_failure(cfe8, 1) == rmra::FailureVerdict{true, std::nullopt});
    CHECK(rmra::check_failure(rmra::uniform_array(4), 1).ok);

    // Oracle: [0,1,5,6,7] misses lag 3.
    const auto v = rmra::check_failure(SensorArray{0, 1, 2, 5, 6, 7}, 2);
    CHECK_FALSE(v.ok);
    CHECK(v.first_hole == 3);

    CHECK_THROWS_AS(rmra::check_failure(cfe8, 0), rmra::EndpointFailureUndefined);
    CHECK_THROWS_AS(rmra::check_failure(cfe8, 10), rmra::EndpointFailureUndefined);
    CHECK_THROWS_AS(rmra::check_failure(cfe8, 3), rmra::UnknownSensor);
}

TEST_CASE("assess") {
    const auto r = rmra::assess(SensorArray{0, 1, 4, 5, 7, 8, 9, 10});
    CHECK(r.healthy_ok);
    CHECK(r.is_tfrsa);
    CHECK(r.essential == std::vector<int>{0, 10});
    CHECK(r.fragility == rmra::Fragility{1, 4});
    CHECK(r.per_sensor.size() == 6);

    CHECK(rmra::assess(SensorArray{0, 1, 2, 3, 4, 10, 11, 16, 17, 21, 22}).is_tfrsa);

    // Oracle table for [0,1,2,3,7,11] has w(3) = 1.
    const auto nested = rmra::assess(SensorArray{0, 1, 2, 3, 7, 11});
    CHECK_FALSE(nested.is_tfrsa);
    CHECK_FALSE(nested.healthy_ok);
    CHECK(nested.first_weak_lag == 3);

    const auto two = rmra::assess(SensorArray{0, 5});
    CHECK_FALSE(two.is_tfrsa);
    const auto unit = rmra::assess(SensorArray{0, 1});
    CHECK_FALSE(unit.is_tfrsa);

    const auto early = rmra::assess(SensorArray{0, 1, 2, 3, 7, 11}, rmra::AssessMode::early_exit);
    CHECK_FALSE(early.is_tfrsa);
    CHECK(early.per_sensor.empty());
}

TEST_CASE("essential sensors") {
    CHECK(rmra::essential_sensors(SensorArray{0, 1, 2}) == std::vector<int>{0, 1, 2});
    CHECK(rmra::essential_sensors(SensorArray{0, 1, 2, 3, 4, 5, 12, 14, 21, 23, 29, 30, 35, 36}) ==
          std::vector<int>{0, 36});
    CHECK_THROWS_AS(rmra::essential_sensors(SensorArray{0, 3}), rmra::TooSmall);
}

TEST_CASE("property: verdicts agree with the definition-level oracle") {
    std::mt19937_64 rng(20261019);
    int tfrsa_seen = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = std::uniform_int_distribution<int>(3, 12)(rng);
        // Dense-ish arrays so that a useful fraction passes.
        const int span = std::uniform_int_distribution<int>(n - 1, 2 * n + 4)(rng);
        const auto p = oracle::random_array(rng, n, span);
        const SensorArray a(p);
        const bool expected = oracle::is_tfrsa(p);
        tfrsa_seen += expected;

        const auto full = rmra::assess(a);
        REQUIRE(full.is_tfrsa == expected);
        REQUIRE(rmra::assess(a, rmra::AssessMode::early_exit).is_tfrsa == expected);
        REQUIRE(rmra::is_tfrsa(a.positions()) == expected);
        REQUIRE(rmra::assess(a.mirror()).is_tfrsa == expected);
        CHECK(full.essential == oracle::essential(p));

        if (expected) {
            CHECK(full.essential == std::vector<int>{0, a.aperture()});
            CHECK(full.fragility == rmra::make_fragility(2, n));
            if (a.aperture() >= 3) {
                CHECK(a.contains(1));
                CHECK(a.contains(a.aperture() - 1));
            }
        }
        if (full.healthy_ok) {
            for (const auto& sv : full.per_sensor) {
                if (!sv.verdict.ok) {
                    CHECK(*sv.verdict.first_hole >= 1);
                    CHECK(*sv.verdict.first_hole <= a.aperture() - 1);
                }
            }
        }
    }
    CHECK(tfrsa_seen > 50);
}

TEST_CASE("wide-aperture arrays take the weight-table path") {
    std::vector<int> p;
    const int pp = 40;  // closed-form member with L = 4p + 2 = 162
    for (int i = 0; i < pp; ++i) p.push_back(i);
    for (int s : {2 * pp, 2 * pp + 1, 3 * pp + 1, 3 * pp + 2, 4 * pp + 1, 4 * pp + 2}) p.push_back(s);
    CHECK(rmra::is_tfrsa(p));
    p[pp] += 3;
    std::sort(p.begin(), p.end());
    CHECK(rmra::is_tfrsa(p) == oracle::is_tfrsa(p));
}
