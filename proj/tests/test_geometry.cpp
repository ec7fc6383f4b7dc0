#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "fpm/geometry.hpp"
#include "fpm/json_io.hpp"

using namespace fpm;

namespace {

double deg(double sine) { return std::asin(sine) * 180.0 / std::numbers::pi; }

const SystemSpec kSystem{};  // 4x/0.1NA, 0.63 um, 6.5 um camera pitch, 128 px
const LedArraySpec kArray{15, 4.0, 110.0};
const GridSpec kHiGrid{512, 6.5 / 4.0 / 4.0};

}  // namespace

TEST_CASE("led_angle reproduces the reported illumination angles") {
    CHECK(led_angle(kArray, LedIndex{0, 0}).sin_tx == 0.0);
    CHECK(led_angle(kArray, LedIndex{0, 0}).sin_ty == 0.0);

    const Angle a22 = led_angle(kArray, LedIndex{2, 2});
    CHECK(deg(a22.sin_tx) == doctest::Approx(4.2).epsilon(0.05 / 4.2));
    CHECK(deg(a22.sin_ty) == doctest::Approx(4.2).epsilon(0.05 / 4.2));

    const Angle a44 = led_angle(kArray, LedIndex{4, 4});
    CHECK(deg(a44.sin_tx) == doctest::Approx(8.3).epsilon(0.05 / 8.3));
    CHECK(deg(a44.sin_ty) == doctest::Approx(8.3).epsilon(0.05 / 8.3));

    CHECK_THROWS_AS(led_angle(kArray, LedIndex{8, 0}), std::out_of_range);
}

TEST_CASE("led_angle is point-antisymmetric") {
    for (int i = -7; i <= 7; i += 3) {
        for (int j = -7; j <= 7; j += 2) {
            const Angle a = led_angle(kArray, LedIndex{i, j});
            const Angle b = led_angle(kArray, symmetric_partner(LedIndex{i, j}));
            CHECK(b.sin_tx == -a.sin_tx);
            CHECK(b.sin_ty == -a.sin_ty);
        }
    }
}

TEST_CASE("symmetric_partner is an involution with fixed center") {
    CHECK(symmetric_partner(LedIndex{0, 0}) == LedIndex{0, 0});
    CHECK(symmetric_partner(LedIndex{3, -2}) == LedIndex{-3, 2});
    for (int i = -5; i <= 5; ++i)
        for (int j = -5; j <= 5; ++j)
            CHECK(symmetric_partner(symmetric_partner(LedIndex{i, j})) == LedIndex{i, j});
}

TEST_CASE("spectral_shift arithmetic on the high-resolution grid") {
    const FreqGrid grid = freq_grid_of(kHiGrid);

    const SpectralShift zero = spectral_shift(Angle{0.0, 0.0}, 0.63, grid);
    CHECK(zero.u_px == 0);
    CHECK(zero.v_px == 0);

    // sin(4.17 deg) = 0.0727 at 0.63 um on 512 px of 0.40625 um -> 24 px
    const SpectralShift s = spectral_shift(Angle{0.0727, 0.0}, 0.63, grid);
    CHECK(s.u_cpum == doctest::Approx(0.11540).epsilon(1e-3));
    CHECK(s.u_px_exact == doctest::Approx(24.0).epsilon(0.5 / 24.0));
    CHECK(s.u_px == 24);

    const SpectralShift d = spectral_shift(Angle{2 * 0.0727, 0.0}, 0.63, grid);
    CHECK(d.u_px_exact == doctest::Approx(2.0 * s.u_px_exact).epsilon(1e-12));

    CHECK_THROWS_AS(spectral_shift(Angle{0.9, 0.0}, 0.63, FreqGrid{64, 1.0 / 104.0}),
                    std::out_of_range);
}

TEST_CASE("synthesized_na matches the reported system values") {
    CHECK(synthesized_na(LedArraySpec{15, 4.0, 108.0}, kSystem) ==
          doctest::Approx(0.45).epsilon(0.01 / 0.45));
    CHECK(synthesized_na(LedArraySpec{17, 4.0, 113.5}, kSystem) ==
          doctest::Approx(0.48).epsilon(0.01 / 0.48));
    CHECK(synthesized_na(LedArraySpec{1, 4.0, 108.0}, kSystem) == kSystem.objective_na);
}

TEST_CASE("synthesized_na is monotone in array size and distance") {
    double prev = 0.0;
    for (int side : {1, 3, 5, 9, 15, 21}) {
        const double na = synthesized_na(LedArraySpec{side, 4.0, 110.0}, kSystem);
        CHECK(na >= prev);
        prev = na;
    }
    prev = 1.0;
    for (double dist : {60.0, 80.0, 100.0, 140.0, 200.0}) {
        const double na = synthesized_na(LedArraySpec{15, 4.0, dist}, kSystem);
        CHECK(na <= prev);
        prev = na;
    }
}

TEST_CASE("make_plan entry counts match the capture counts") {
    const auto full15 = make_plan(kArray, PlanMode::full, kSystem, kHiGrid);
    CHECK(full15.entries.size() == 225);

    const auto half15 = make_plan(kArray, PlanMode::half_rows, kSystem, kHiGrid);
    CHECK(half15.entries.size() == 120);

    const auto half17 = make_plan(LedArraySpec{17, 4.0, 113.5}, PlanMode::half_rows, kSystem, kHiGrid);
    CHECK(half17.entries.size() == 153);

    const auto full17 = make_plan(LedArraySpec{17, 4.0, 113.5}, PlanMode::full, kSystem, kHiGrid);
    CHECK(full17.entries.size() == 289);

    const auto cover = make_plan(kArray, PlanMode::minimal_cover, kSystem, kHiGrid);
    CHECK(cover.entries.size() == 113);
}

TEST_CASE("half plans cover the full array together with their reflections") {
    for (PlanMode mode : {PlanMode::half_rows, PlanMode::minimal_cover}) {
        for (bool flip : {false, true}) {
            const auto plan = make_plan(kArray, mode, kSystem, kHiGrid, flip);
            std::set<std::pair<int, int>> covered;
            for (const auto& e : plan.entries) {
                covered.insert({e.led.i, e.led.j});
                const LedIndex p = symmetric_partner(e.led);
                covered.insert({p.i, p.j});
            }
            CHECK(covered.size() == 225);
        }
    }
}

TEST_CASE("minimal cover holds no symmetric pair twice") {
    const auto plan = make_plan(kArray, PlanMode::minimal_cover, kSystem, kHiGrid);
    std::set<std::pair<int, int>> seen;
    for (const auto& e : plan.entries) {
        const LedIndex p = symmetric_partner(e.led);
        CHECK_FALSE(seen.count({p.i, p.j}));
        seen.insert({e.led.i, e.led.j});
    }
}

TEST_CASE("plans start at the center and spiral outward") {
    for (PlanMode mode : {PlanMode::full, PlanMode::half_rows, PlanMode::minimal_cover}) {
        const auto plan = make_plan(kArray, mode, kSystem, kHiGrid);
        REQUIRE_FALSE(plan.entries.empty());
        CHECK(plan.entries.front().led == LedIndex{0, 0});

        // Chebyshev ring index never decreases along the plan
        int prev_ring = 0;
        for (const auto& e : plan.entries) {
            const int ring = std::max(std::abs(e.led.i), std::abs(e.led.j));
            CHECK(ring >= prev_ring);
            prev_ring = ring;
        }

        // direction-sine magnitude is non-decreasing within one ring's spread
        const double ring_spread = [&] {
            double spread = 0.0;
            for (int r = 1; r <= kArray.half_span(); ++r) {
                const double lo = led_angle(kArray, LedIndex{0, r}).radial_sine();
                const double hi = led_angle(kArray, LedIndex{r, r}).radial_sine();
                spread = std::max(spread, hi - lo);
            }
            return spread;
        }();
        double prev_sine = 0.0;
        for (const auto& e : plan.entries) {
            const double sine = Angle{e.sin_tx, e.sin_ty}.radial_sine();
            CHECK(sine >= prev_sine - ring_spread - 1e-12);
            prev_sine = sine;
        }
    }
}

TEST_CASE("plan entries are unique and within bounds, with consistent shifts") {
    const auto plan = make_plan(kArray, PlanMode::full, kSystem, kHiGrid);
    std::set<std::pair<int, int>> seen;
    for (const auto& e : plan.entries) {
        CHECK(seen.insert({e.led.i, e.led.j}).second);
        CHECK(std::abs(e.led.i) <= 7);
        CHECK(std::abs(e.led.j) <= 7);
        // rounded shift negates exactly across a pair
        const int kp = plan.find_entry(symmetric_partner(e.led));
        REQUIRE(kp >= 0);
        CHECK(plan.entries[static_cast<size_t>(kp)].shift_u_px == -e.shift_u_px);
        CHECK(plan.entries[static_cast<size_t>(kp)].shift_v_px == -e.shift_v_px);
    }
}

TEST_CASE("bright/dark field classification follows the pupil cone") {
    const auto plan = make_plan(kArray, PlanMode::full, kSystem, kHiGrid);
    for (const auto& e : plan.entries) {
        const bool bright = Angle{e.sin_tx, e.sin_ty}.radial_sine() <= kSystem.objective_na;
        CHECK(e.bright_field == bright);
    }
    // the center is bright-field, the corner is dark-field for this setup
    CHECK(plan.entries.front().bright_field);
    const int corner = plan.find_entry(LedIndex{7, 7});
    REQUIRE(corner >= 0);
    CHECK_FALSE(plan.entries[static_cast<size_t>(corner)].bright_field);
}

TEST_CASE("plan JSON round trip preserves every field") {
    const auto plan = make_plan(kArray, PlanMode::half_rows, kSystem, kHiGrid, true);
    const auto j = plan_to_json(plan);
    const auto back = plan_from_json(j);
    CHECK(back.mode == plan.mode);
    CHECK(back.flip_half == plan.flip_half);
    CHECK(back.array.side_count == plan.array.side_count);
    CHECK(back.array.led_pitch_mm == plan.array.led_pitch_mm);
    CHECK(back.array.distance_mm == plan.array.distance_mm);
    REQUIRE(back.entries.size() == plan.entries.size());
    for (size_t k = 0; k < plan.entries.size(); ++k) {
        CHECK(back.entries[k].led == plan.entries[k].led);
        CHECK(back.entries[k].sin_tx == plan.entries[k].sin_tx);
        CHECK(back.entries[k].sin_ty == plan.entries[k].sin_ty);
        CHECK(back.entries[k].shift_u_px == plan.entries[k].shift_u_px);
        CHECK(back.entries[k].shift_v_px == plan.entries[k].shift_v_px);
        CHECK(back.entries[k].shift_u_px_exact == plan.entries[k].shift_u_px_exact);
        CHECK(back.entries[k].bright_field == plan.entries[k].bright_field);
    }
    // serialization is deterministic
    CHECK(plan_to_json(back).dump() == j.dump());
}

TEST_CASE("spec validation names the offending field") {
    SystemSpec bad = kSystem;
    bad.objective_na = 1.5;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("objective_na"), std::invalid_argument);

    LedArraySpec even{14, 4.0, 110.0};
    CHECK_THROWS_WITH_AS(even.validate(), doctest::Contains("side_count"), std::invalid_argument);

    CHECK_THROWS_AS(plan_mode_from_string("diagonal"), std::invalid_argument);
}
