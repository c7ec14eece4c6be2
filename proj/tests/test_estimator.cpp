#include <doctest.h>

#include <cmath>
#include <random>

#include "codejudge/complexity.hpp"

using namespace codejudge;

namespace {

std::vector<std::int64_t> default_schedule() {
    std::vector<std::int64_t> s;
    for (int k = 8; k <= 17; ++k) s.push_back(std::int64_t{1} << k);
    return s;
}

TimingCurve synthetic_curve(ComplexityClass cls, double scale,
                            const std::vector<std::int64_t>& schedule) {
    TimingCurve curve;
    for (auto n : schedule)
        curve.points.push_back(
            {n, scale * detail::class_growth(cls, static_cast<double>(n))});
    return curve;
}

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("noiseless curves are identified exactly and confidently") {
    for (ComplexityClass cls : detail::kFittableClasses) {
        TimingCurve curve = synthetic_curve(cls, 3.7, default_schedule());
        ComplexityVerdict v = estimate_class(curve);
        CHECK(v.estimated == cls);
        CHECK(v.residuals.at(cls) < 1e-9);
        CHECK(v.confident);
    }
}

TEST_CASE("default config matches the pinned schedule") {
    EstimatorConfig cfg;
    CHECK(cfg.schedule == default_schedule());
    CHECK(cfg.repeats == 5);
    CHECK(cfg.noise_floor_ms == doctest::Approx(5.0));
}

TEST_CASE("estimates are invariant under time-unit rescaling") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> noise(0.8, 1.2);
    for (int trial = 0; trial < 100; ++trial) {
        auto cls = detail::kFittableClasses[trial % detail::kFittableClasses.size()];
        TimingCurve curve = synthetic_curve(cls, 0.002, default_schedule());
        for (auto& pt : curve.points) pt.wall_ms *= noise(rng);
        TimingCurve scaled = curve;
        for (auto& pt : scaled.points) pt.wall_ms *= 1000.0;
        CHECK(estimate_class(curve).estimated == estimate_class(scaled).estimated);
    }
}

TEST_CASE("multiplicative noise stays within one lattice step") {
    std::mt19937_64 rng(20250814);
    std::uniform_real_distribution<double> noise(0.7, 1.3);
    std::uniform_real_distribution<double> logc(-3.0, 3.0);
    int within = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        auto cls = detail::kFittableClasses[static_cast<std::size_t>(rng() % 6)];
        TimingCurve curve = synthetic_curve(cls, std::exp(logc(rng)), default_schedule());
        for (auto& pt : curve.points) pt.wall_ms *= noise(rng);
        ComplexityVerdict v = estimate_class(curve);
        if (std::abs(class_rank(v.estimated) - class_rank(cls)) <= 1) ++within;
    }
    CHECK(within >= trials * 95 / 100);
}

TEST_CASE("half-step curves break ties toward the lower class") {
    // t = n^2.5 sits exactly between CN2 and CN3: equal residuals
    TimingCurve curve;
    for (auto n : default_schedule())
        curve.points.push_back({n, std::pow(static_cast<double>(n), 2.5)});
    ComplexityVerdict v = estimate_class(curve);
    CHECK(v.residuals.at(ComplexityClass::CN2) ==
          doctest::Approx(v.residuals.at(ComplexityClass::CN3)));
    CHECK(v.estimated == ComplexityClass::CN2);
    CHECK_FALSE(v.confident);
}

TEST_CASE("super-cubic polynomial growth lands on CN3") {
    TimingCurve curve;
    for (auto n : default_schedule())
        curve.points.push_back({n, std::pow(static_cast<double>(n), 3.5)});
    CHECK(estimate_class(curve).estimated == ComplexityClass::CN3);
}

TEST_CASE("fitting never assigns CSUPER") {
    TimingCurve exponential;
    for (auto n : default_schedule())
        exponential.points.push_back({n, std::exp(static_cast<double>(n) / 256.0)});
    ComplexityVerdict v = estimate_class(exponential);
    CHECK(v.estimated != ComplexityClass::CSUPER);
    CHECK(v.residuals.count(ComplexityClass::CSUPER) == 0);
}

TEST_CASE("a timeout-truncated quadratic prefix still reads as CN2") {
    // five surviving points, 2^8 .. 2^12, like a quadratic candidate that
    // times out at the next size
    std::vector<std::int64_t> prefix = {256, 512, 1024, 2048, 4096};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> noise(0.93, 1.07);
    TimingCurve curve;
    for (auto n : prefix)
        curve.points.push_back(
            {n, 2e-4 * static_cast<double>(n) * static_cast<double>(n) * noise(rng)});
    ComplexityVerdict v = estimate_class(curve);
    CHECK(v.estimated == ComplexityClass::CN2);
}

TEST_CASE("fewer than four points is an error") {
    TimingCurve curve;
    curve.points = {{256, 1.0}, {512, 2.0}, {1024, 4.0}};
    CHECK_THROWS_AS(estimate_class(curve), InsufficientPoints);
}

TEST_CASE("confidence needs a small residual and a clear margin") {
    // strong noise pushes the best residual above 0.25
    TimingCurve curve = synthetic_curve(ComplexityClass::CN, 1.0, default_schedule());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> noise(0.4, 2.5);
    for (auto& pt : curve.points) pt.wall_ms *= noise(rng);
    ComplexityVerdict v = estimate_class(curve);
    if (v.residuals.at(v.estimated) > 0.25) CHECK_FALSE(v.confident);
}

}  // TEST_SUITE
