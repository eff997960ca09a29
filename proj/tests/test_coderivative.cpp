#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "covkit/catalog.hpp"
#include "covkit/coderivative.hpp"

using namespace covkit;

namespace {

Point circle_point(int i, int count) {
    double phi = 2.0 * M_PI * i / count;
    return Point{std::cos(phi), std::sin(phi)};
}

}  // namespace

TEST_CASE("coderivative matrix at differentiable points") {
    Jacobian j41 = coderivative_matrix(catalog::get(catalog::Id::rational_4_1).handle, Point{1, 0});
    CHECK(j41(0, 0) == doctest::Approx(0.0));
    CHECK(j41(0, 1) == doctest::Approx(0.0));
    CHECK(j41(1, 0) == doctest::Approx(0.0));
    CHECK(j41(1, 1) == doctest::Approx(2.0));

    Jacobian j42 = coderivative_matrix(catalog::get(catalog::Id::trig_4_2).handle, Point{0, 0});
    CHECK(j42(0, 0) == doctest::Approx(1.0));
    CHECK(j42(0, 1) == doctest::Approx(1.0));
    CHECK(j42(1, 0) == doctest::Approx(0.0));
    CHECK(j42(1, 1) == doctest::Approx(0.0));

    Jacobian a{{1, 2}, {-3, 0.5}};
    MappingHandle lin;
    lin.input_dim = 2;
    lin.output_dim = 2;
    lin.name = "linear";
    lin.evaluate = [a](const Point& x) { return a.apply(x); };
    Jacobian recovered = coderivative_matrix(lin, Point{0.4, -2.0});  // finite-difference path
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(recovered(r, c) == doctest::Approx(a(r, c)).epsilon(1e-8));
}

TEST_CASE("coderivative matrix refuses excluded points") {
    const auto& entry = catalog::get(catalog::Id::rational_4_1);
    CHECK_THROWS_WITH_AS(coderivative_matrix(entry.handle, Point{0, 0}),
                         doctest::Contains("limsup_probe"), ExcludedPointError);
}

TEST_CASE("action norms match the closed forms") {
    const auto& poly = catalog::get(catalog::Id::poly_4_3);
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    for (int i = 0; i < 20; ++i) {
        Point y = circle_point(static_cast<int>(rng() % 64), 64);
        Point z{std::cos(unif(rng)) * 2.0, std::sin(unif(rng)) * 2.0};
        CHECK(coderivative_action_norm(poly.handle, z, y) ==
              doctest::Approx(2.0 * norm(z)).epsilon(1e-12));
    }

    const auto& trig = catalog::get(catalog::Id::trig_4_2);
    CHECK(coderivative_action_norm(trig.handle, Point{0, 0}, Point{1, 0}) ==
          doctest::Approx(std::sqrt(2.0)));

    const auto& radical = catalog::get(catalog::Id::radical_4_6);
    double r = 1.0 / std::sqrt(2.0);
    CHECK(coderivative_action_norm(radical.handle, Point{1, 1}, Point{r, r}) ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("limsup probe reproduces the singular-point rejections of the rational mapping") {
    const auto& entry = catalog::get(catalog::Id::rational_4_1);
    Point theta = Point::zeros(2);

    // covector (1, 0): along the ray (0, 1) the quotient tends to y1 = 1
    LimsupProbeReport a =
        limsup_probe(entry.handle, theta, Point{1, 0}, Point{0.3, -0.7}, {Point{0, 1}});
    CHECK(a.verdict == ProbeVerdict::Rejected);
    REQUIRE(a.probe_rays.size() == 1);
    CHECK(a.probe_rays[0].limit_estimate == doctest::Approx(1.0).epsilon(1e-6));

    // covector (0, -1): along the diagonal the quotient tends to -y2 = 1
    double s = 1.0 / std::sqrt(2.0);
    LimsupProbeReport b =
        limsup_probe(entry.handle, theta, Point{0, -1}, Point{-1.0, 2.0}, {Point{s, s}});
    CHECK(b.verdict == ProbeVerdict::Rejected);
    REQUIRE(b.probe_rays.size() == 1);
    CHECK(b.probe_rays[0].limit_estimate == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("limsup probe is plausible for the adjoint candidate at differentiable points") {
    const auto& entry = catalog::get(catalog::Id::poly_4_3);
    Point x{1, 1};
    Point y{1, 0};
    Point candidate = adjoint_apply(coderivative_matrix(entry.handle, x), y);
    LimsupProbeReport report =
        limsup_probe(entry.handle, x, y, candidate, standard_rays(2));
    CHECK(report.verdict == ProbeVerdict::Plausible);
    for (const RayEstimate& ray : report.probe_rays) {
        CHECK(ray.limit_estimate <= 1e-3);
    }
}

TEST_CASE("adjoint candidates stay plausible across differentiable catalog points") {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (catalog::Id id : catalog::all_ids()) {
        const auto& entry = catalog::get(id);
        int tested = 0;
        while (tested < 10) {
            Point z{unif(rng), unif(rng)};
            if (norm(z) < 0.5) continue;
            ++tested;
            Point y = circle_point(static_cast<int>(rng() % 64), 64);
            Point candidate = adjoint_apply(coderivative_matrix(entry.handle, z), y);
            LimsupProbeReport report =
                limsup_probe(entry.handle, z, y, candidate, standard_rays(2));
            CHECK(report.verdict == ProbeVerdict::Plausible);
            for (const RayEstimate& ray : report.probe_rays) {
                CHECK(ray.limit_estimate <= 1e-3);
            }
        }
    }
}

TEST_CASE("every nonzero covector on a 64-point circle is rejected at the singular point") {
    const auto& entry = catalog::get(catalog::Id::rational_4_1);
    Point theta = Point::zeros(2);
    const std::vector<Point> rays = standard_rays(2);
    for (int i = 0; i < 64; ++i) {
        Point y = circle_point(i, 64);
        LimsupProbeReport report = limsup_probe(entry.handle, theta, y, Point{0.1, 0.2}, rays);
        CHECK(report.verdict == ProbeVerdict::Rejected);
        double best = 0.0;
        for (const RayEstimate& ray : report.probe_rays) {
            best = std::max(best, ray.limit_estimate);
        }
        CHECK(best >= 0.9 * std::max(std::abs(y[0]), std::abs(y[1])));
    }
}

TEST_CASE("tagged coderivative outcomes") {
    const auto& poly = catalog::get(catalog::Id::poly_4_3);
    CoderivativeOutcome singleton = coderivative_action(poly.handle, Point{1, 1}, Point{1, 0});
    CHECK(singleton.kind == CoderivativeOutcome::Kind::Singleton);
    REQUIRE(singleton.value.has_value());
    CHECK((*singleton.value) == Point{2, -2});

    const auto& rational = catalog::get(catalog::Id::rational_4_1);
    CoderivativeOutcome empty =
        coderivative_action(rational.handle, Point::zeros(2), Point{0.6, -0.8});
    CHECK(empty.kind == CoderivativeOutcome::Kind::EmptyEvidence);
    REQUIRE(empty.evidence.has_value());
    CHECK(empty.evidence->verdict == ProbeVerdict::Rejected);

    // no claim for the zero covector
    CoderivativeOutcome zero =
        coderivative_action(rational.handle, Point::zeros(2), Point::zeros(2));
    CHECK(zero.kind == CoderivativeOutcome::Kind::Unknown);

    // the radical mapping is continuous at the origin, so the rejection
    // limits are candidate-dependent there and no emptiness claim is made
    const auto& radical = catalog::get(catalog::Id::radical_4_6);
    CoderivativeOutcome unknown =
        coderivative_action(radical.handle, Point::zeros(2), Point{1.0, 0.0});
    CHECK(unknown.kind == CoderivativeOutcome::Kind::Unknown);
}

TEST_CASE("rays that cannot be evaluated are skipped and recorded") {
    MappingHandle half;
    half.input_dim = 2;
    half.output_dim = 1;
    half.name = "half-plane";
    half.evaluate = [](const Point& x) {
        if (x[0] < 0.0) throw std::domain_error("left half-plane");
        return Point{std::sqrt(x[0]) + x[1]};
    };
    LimsupProbeReport report = limsup_probe(half, Point{0, 0}, Point{1.0}, Point{0, 0},
                                            {Point{1, 0}, Point{-1, 0}});
    CHECK(report.probe_rays.size() == 1);
    CHECK(report.skipped_rays.size() == 1);

    CHECK_THROWS_AS(
        limsup_probe(half, Point{0, 0}, Point{1.0}, Point{0, 0}, {Point{-1, 0}}),
        std::runtime_error);
}
