#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "covkit/catalog.hpp"
#include "covkit/expr.hpp"
#include "covkit/frechet.hpp"
#include "covkit/mapping.hpp"

using namespace covkit;

namespace {

Point sample_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    return Point{unif(rng), unif(rng)};
}

// keeps rational denominators away from the blow-up region
Point sample_annulus(std::mt19937_64& rng, double lo = 0.3) {
    for (;;) {
        Point z = sample_point(rng);
        if (norm(z) >= lo) return z;
    }
}

}  // namespace

TEST_CASE("entry lookups") {
    CHECK(catalog::all_ids().size() == 6);
    CHECK(catalog::name_of(catalog::Id::poly_4_3) == "poly_4_3");
    CHECK(catalog::id_from_name("exp_4_4") == catalog::Id::exp_4_4);
    CHECK(!catalog::id_from_name("nope").has_value());
}

TEST_CASE("pointwise values") {
    CHECK(catalog::get(catalog::Id::poly_4_3).handle.evaluate(Point{1, 2}) == Point{-3, 4});
    CHECK(catalog::get(catalog::Id::rational_4_1).handle.evaluate(Point{1, 0}) == Point{1, 0});
    Point v = catalog::get(catalog::Id::log_4_5).handle.evaluate(Point{1, 1});
    CHECK(v[0] == doctest::Approx(std::log(3.0)));
    CHECK(v[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("two-branch mappings are defined at the origin but refuse jacobians there") {
    const auto& rational = catalog::get(catalog::Id::rational_4_1);
    const auto& radical = catalog::get(catalog::Id::radical_4_6);
    CHECK(rational.handle.evaluate(Point{0, 0}) == Point{0, 0});
    CHECK(radical.handle.evaluate(Point{0, 0}) == Point{0, 0});
    CHECK(rational.handle.is_excluded(Point{0, 0}));
    CHECK(radical.handle.is_excluded(Point{0, 0}));
    CHECK_THROWS_AS(rational.handle.analytic_jacobian(Point{0, 0}), ExcludedPointError);
    CHECK_THROWS_AS(radical.handle.analytic_jacobian(Point{0, 0}), ExcludedPointError);
    CHECK(catalog::get(catalog::Id::poly_4_3).handle.excluded_points.empty());
    CHECK(catalog::get(catalog::Id::trig_4_2).handle.excluded_points.empty());
}

TEST_CASE("the radical mapping is continuous at the origin") {
    const auto& radical = catalog::get(catalog::Id::radical_4_6);
    for (double t : {1e-2, 1e-4, 1e-6, 1e-8}) {
        CHECK(norm(radical.handle.evaluate(Point{t, -t})) <= 2.0 * t);
    }
}

TEST_CASE("norm identities hold at random points") {
    std::mt19937_64 rng(41);
    for (catalog::Id id :
         {catalog::Id::rational_4_1, catalog::Id::trig_4_2, catalog::Id::poly_4_3}) {
        const auto& entry = catalog::get(id);
        REQUIRE(entry.norm_identity.has_value());
        for (int i = 0; i < 1000; ++i) {
            Point x = id == catalog::Id::rational_4_1 ? sample_annulus(rng, 1e-3)
                                                      : sample_point(rng);
            double expected = (*entry.norm_identity)(x);
            CHECK(std::abs(norm(entry.handle.evaluate(x)) - expected) <= 1e-12 * (1.0 + expected));
        }
    }
}

TEST_CASE("analytic, dual-number, and finite-difference jacobians agree") {
    std::mt19937_64 rng(42);
    for (catalog::Id id : catalog::all_ids()) {
        const auto& entry = catalog::get(id);
        expr::ExprMapping parsed = expr::parse_mapping(entry.expression, 2, 2, 0);
        int tested = 0;
        while (tested < 100) {
            Point z = sample_annulus(rng);
            ++tested;
            Jacobian an = entry.handle.analytic_jacobian(z);
            Jacobian ad = expr::ad_jacobian(parsed, z);
            Jacobian fd = fd_jacobian(entry.handle, z, 1e-6);
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    double tol = std::max(1e-6, 1e-6 * std::abs(an(r, c)));
                    CHECK(std::abs(an(r, c) - ad(r, c)) <= tol);
                    CHECK(std::abs(an(r, c) - fd(r, c)) <= tol);
                    CHECK(std::abs(ad(r, c) - fd(r, c)) <= tol);
                }
            }
        }
    }
}

TEST_CASE("closed-form action norms match ||J^T y||") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (catalog::Id id : catalog::all_ids()) {
        const auto& entry = catalog::get(id);
        for (int i = 0; i < 1000; ++i) {
            Point z = sample_annulus(rng);
            Point y{unif(rng), unif(rng)};
            double closed = entry.closed_form_action_norm(z, y);
            double direct = norm(adjoint_apply(entry.handle.analytic_jacobian(z), y));
            CHECK(std::abs(closed - direct) <= 1e-10 * (1.0 + closed));
        }
    }
}

TEST_CASE("closed-form action norm spot values") {
    CHECK(catalog::get(catalog::Id::rational_4_1)
              .closed_form_action_norm(Point{1, 0}, Point{0, 1}) == doctest::Approx(2.0));
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    for (int i = 0; i < 10; ++i) {
        double phi = unif(rng);
        CHECK(catalog::get(catalog::Id::poly_4_3)
                  .closed_form_action_norm(Point{3, 4}, Point{std::cos(phi), std::sin(phi)}) ==
              doctest::Approx(10.0));
    }
    double r = 1.0 / std::sqrt(2.0);
    CHECK(catalog::get(catalog::Id::exp_4_4).closed_form_action_norm(Point{0, 0}, Point{r, r}) ==
          doctest::Approx(0.0));
    CHECK(catalog::get(catalog::Id::trig_4_2).closed_form_action_norm(Point{0, 0}, Point{1, 0}) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(catalog::get(catalog::Id::radical_4_6).closed_form_action_norm(Point{1, 1}, Point{r, r}) ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("rank-one entries have identically zero minimum singular value") {
    std::mt19937_64 rng(45);
    for (catalog::Id id : {catalog::Id::rational_4_1, catalog::Id::trig_4_2, catalog::Id::exp_4_4,
                           catalog::Id::log_4_5}) {
        const auto& entry = catalog::get(id);
        for (int i = 0; i < 200; ++i) {
            Point z = sample_annulus(rng);
            CHECK(min_singular_value(entry.handle.analytic_jacobian(z)) <= 1e-12);
        }
    }
}

TEST_CASE("reference covering values") {
    auto poly = catalog::get(catalog::Id::poly_4_3).reference_covering(Point{3, 4});
    CHECK(poly.kind == catalog::ReferenceCovering::Kind::Exact);
    CHECK(poly.exact_value == doctest::Approx(10.0));

    auto trig = catalog::get(catalog::Id::trig_4_2).reference_covering(Point{1, 1});
    CHECK(trig.kind == catalog::ReferenceCovering::Kind::Zero);

    auto radical = catalog::get(catalog::Id::radical_4_6).reference_covering(Point{1, 1});
    CHECK(radical.kind == catalog::ReferenceCovering::Kind::UpperBounds);
    REQUIRE(radical.upper_bounds.size() == 2);
    CHECK(radical.upper_bounds[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(radical.upper_bounds[1] == doctest::Approx(std::sqrt(2.0)));

    auto axis = catalog::get(catalog::Id::radical_4_6).reference_covering(Point{1, 0});
    CHECK(axis.kind == catalog::ReferenceCovering::Kind::Zero);
}
