#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "volent/catalog.hpp"
#include "volent/entropy.hpp"
#include "volent/geometry.hpp"
#include "volent/rng.hpp"
#include "volent/verify.hpp"

using namespace volent;
using namespace volent::verify;
using catalog::custom;
using catalog::ProductSpec;

TEST_CASE("exponent maximization reproduces the closed forms") {
    SUBCASE("rank one") {
        const auto best = maximize_exponent(custom(1, 0, 2), 10, 0);
        CHECK(best.value == doctest::Approx(6.0).epsilon(1e-13));
        REQUIRE(best.argmax.size() == 1);
        CHECK(std::abs(best.argmax[0]) == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("rank two with the known direction") {
        const auto best = maximize_exponent(catalog::type_iii(2), 50, 0);
        CHECK(best.value == doctest::Approx(2.0 * std::sqrt(5.0)).epsilon(1e-13));
        std::vector<double> sorted = best.argmax;
        for (double& v : sorted) v = std::abs(v);
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        CHECK(std::abs(sorted[0] - 2.0 / std::sqrt(5.0)) < 1e-6);
        CHECK(std::abs(sorted[1] - 1.0 / std::sqrt(5.0)) < 1e-6);
    }
    SUBCASE("exceptional domain") {
        const auto best = maximize_exponent(catalog::type_vi(), 50, 0);
        CHECK(std::abs(best.value - 2.0 * std::sqrt(371.0)) <= 1e-9);
    }
    SUBCASE("catalog sweep against the closed form") {
        for (const auto& domain : catalog::enumerate_domains(40)) {
            const auto best = maximize_exponent(domain, 20, 1);
            const auto closed = entropy::entropy_hyperbolic(domain);
            CHECK(std::abs(best.value - closed.value) <= 1e-9);
            double norm2 = 0.0;
            for (double v : best.argmax) norm2 += v * v;
            CHECK(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12);
            if (domain.a >= 1) {
                // distinct weights make the direction unique up to sign/sort
                std::vector<double> sorted = best.argmax;
                for (double& v : sorted) v = std::abs(v);
                std::sort(sorted.begin(), sorted.end(), std::greater<>());
                double gap2 = 0.0;
                for (size_t j = 0; j < sorted.size(); ++j) {
                    const double diff = sorted[j] - closed.optimizer[j];
                    gap2 += diff * diff;
                }
                CHECK(std::sqrt(gap2) <= 1e-6);
            }
        }
    }
    SUBCASE("products maximize over the joint sphere") {
        const ProductSpec discs{catalog::type_i(1, 1), catalog::type_i(1, 1)};
        CHECK(maximize_exponent(discs, 20, 0).value ==
              doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
        const ProductSpec pair{catalog::type_i(2, 12), catalog::type_iv(18)};
        CHECK(maximize_exponent(pair, 30, 0).value ==
              doctest::Approx(2.0 * std::sqrt(580.0)).epsilon(1e-12));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(maximize_exponent(custom(2, 1, 0), 0, 0), Error);
    }
}

TEST_CASE("quadrature ball volume matches the disc oracle") {
    const ProductSpec disc{catalog::type_i(1, 1)};
    for (double radius : {1.0, 2.0, 5.0, 10.0}) {
        const double exact = std::sinh(radius) * std::sinh(radius) / 2.0;
        const double numeric = ball_volume(disc, radius, Quadrature{});
        CHECK(std::abs(numeric - exact) <= 1e-8 * exact);
    }
}

TEST_CASE("ball volume input validation") {
    const ProductSpec disc{catalog::type_i(1, 1)};
    CHECK_THROWS_AS(ball_volume(disc, 0.0, Quadrature{}), NonPositiveRadiusError);
    CHECK_THROWS_AS(ball_volume(disc, -1.0, MonteCarlo{1000, 0}),
                    NonPositiveRadiusError);
    CHECK_THROWS_AS(ball_volume(ProductSpec{custom(4, 1, 0)}, 1.0, Quadrature{}),
                    UnsupportedRankError);
    CHECK_THROWS_AS(
        ball_volume(ProductSpec{catalog::type_iii(2), catalog::type_iii(2)}, 1.0,
                    Quadrature{}),
        UnsupportedRankError);
    CHECK_THROWS_AS(ball_volume(disc, 1.0, MonteCarlo{0, 0}), Error);
}

TEST_CASE("product of discs equals the symmetrized rank-two cone integral") {
    // same integrand; the ordered cone carries 1/2! of the orthant mass
    const ProductSpec discs{catalog::type_i(1, 1), catalog::type_i(1, 1)};
    const ProductSpec polydisc_cone{custom(2, 0, 0)};
    for (double radius : {1.5, 3.0, 6.0}) {
        const double via_product = ball_volume(discs, radius, Quadrature{});
        const double via_cone = ball_volume(polydisc_cone, radius, Quadrature{});
        CHECK(via_product == doctest::Approx(2.0 * via_cone).epsilon(1e-9));
    }
}

TEST_CASE("Monte Carlo agrees with quadrature within three standard errors") {
    for (const auto& domain :
         {ProductSpec{custom(2, 0, 0)}, ProductSpec{catalog::type_iii(2)}}) {
        const auto quad = log_ball_volume(domain, 5.0, Quadrature{});
        const auto mc = log_ball_volume(domain, 5.0, MonteCarlo{10'000'000, 42});
        CHECK(std::isfinite(mc.log_value));
        CHECK(std::isfinite(mc.log_std_error));
        const double rel_dev = std::abs(std::expm1(mc.log_value - quad.log_value));
        const double rel_se = std::exp(mc.log_std_error - quad.log_value);
        CHECK(rel_se > 0.0);
        CHECK(rel_dev <= 3.0 * rel_se);
    }
}

TEST_CASE("rank-three quadrature agrees with Monte Carlo on every block layout") {
    const auto disc = catalog::type_i(1, 1);
    const ProductSpec layouts[] = {
        ProductSpec{custom(3, 1, 0)},             // one ordered triple
        ProductSpec{catalog::type_iii(2), disc},  // ordered pair then free
        ProductSpec{disc, catalog::type_iii(2)},  // free then ordered pair
        ProductSpec{disc, disc, disc},            // full octant
    };
    for (const auto& domain : layouts) {
        const auto quad = log_ball_volume(domain, 4.0, Quadrature{});
        const auto mc = log_ball_volume(domain, 4.0, MonteCarlo{2'000'000, 17});
        const double rel_dev = std::abs(std::expm1(mc.log_value - quad.log_value));
        const double rel_se = std::exp(mc.log_std_error - quad.log_value);
        CHECK(rel_dev <= 3.0 * rel_se);
    }
    // factor order cannot change the volume
    const auto forward = log_ball_volume(layouts[1], 4.0, Quadrature{});
    const auto backward = log_ball_volume(layouts[2], 4.0, Quadrature{});
    CHECK(forward.log_value == doctest::Approx(backward.log_value).epsilon(1e-10));
}

TEST_CASE("growth slope converges to the disc entropy") {
    const ProductSpec disc{catalog::type_i(1, 1)};
    std::vector<double> radii;
    for (double t = 2.0; t <= 15.0; t += 1.0) radii.push_back(t);
    const auto estimate = growth_entropy(disc, radii, Quadrature{}, 6);
    CHECK(estimate.fit_window == 6); // fit over [10, 15]
    CHECK(std::abs(estimate.slope - 2.0) <= 0.02 * 2.0);
    CHECK(std::adjacent_find(estimate.log_volumes.begin(), estimate.log_volumes.end(),
                             [](double lhs, double rhs) { return lhs >= rhs; }) ==
          estimate.log_volumes.end()); // strictly increasing

    // widening the radii so the window sits at [15, 20] improves the fit
    std::vector<double> wide = radii;
    for (double t = 16.0; t <= 20.0; t += 1.0) wide.push_back(t);
    const auto better = growth_entropy(disc, wide, Quadrature{}, 6);
    CHECK(std::abs(better.slope - 2.0) < std::abs(estimate.slope - 2.0));
}

TEST_CASE("growth estimation validates its inputs") {
    const ProductSpec disc{catalog::type_i(1, 1)};
    const std::vector<double> radii{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK_THROWS_AS(growth_entropy(disc, {}, Quadrature{}), FitDegenerateError);
    CHECK_THROWS_AS(growth_entropy(disc, {1.0, 2.0, 3.0}, Quadrature{}),
                    FitDegenerateError);
    CHECK_THROWS_AS(growth_entropy(disc, radii, Quadrature{}, 3), FitDegenerateError);
    CHECK_THROWS_AS(growth_entropy(disc, radii, Quadrature{}, 6), FitDegenerateError);
    CHECK_THROWS_AS(growth_entropy(disc, {1.0, 2.0, 2.0, 3.0}, Quadrature{}), Error);
    CHECK_THROWS_AS(growth_entropy(disc, {-1.0, 2.0, 3.0, 4.0}, Quadrature{}),
                    NonPositiveRadiusError);
    // default window is the top 40%
    const auto estimate = growth_entropy(disc, radii, Quadrature{});
    CHECK(estimate.fit_window == 4);
}

TEST_CASE("Monte Carlo runs are deterministic given the seed") {
    const ProductSpec domain{catalog::type_iii(2)};
    std::vector<double> radii{2.0, 3.0, 4.0, 5.0, 6.0};
    const Method method = MonteCarlo{200'000, 9};

    const auto first = growth_entropy(domain, radii, method);
    const auto second = growth_entropy(domain, radii, method);
    CHECK(first.slope == second.slope);
    CHECK(first.slope_std_error == second.slope_std_error);
    CHECK(first.log_volumes == second.log_volumes);

    const auto serial = growth_entropy(domain, radii, method, 0, Exec::Serial);
    CHECK(serial.slope == first.slope);
    CHECK(serial.log_volumes == first.log_volumes);

    const auto reseeded = growth_entropy(domain, radii, MonteCarlo{200'000, 10});
    CHECK(reseeded.slope != first.slope);
}

TEST_CASE("Monte Carlo estimator matches a plain linear-space replay") {
    // replay the exact sample stream and average in linear arithmetic
    const ProductSpec domain{custom(2, 0, 0)};
    const int64_t samples = 100'000;
    const uint64_t seed = 5;
    const double radius = 2.0;

    const auto estimate = log_ball_volume(domain, radius, MonteCarlo{samples, seed});

    const geometry::RadialDensityParams params(2, 0, 0);
    double sum = 0.0;
    const int64_t block_size = 1 << 16;
    const int64_t nblocks = (samples + block_size - 1) / block_size;
    for (int64_t block = 0; block < nblocks; ++block) {
        std::mt19937_64 gen(rng::substream_seed(seed, static_cast<uint64_t>(block)));
        const int64_t count = std::min<int64_t>(block_size, samples - block * block_size);
        for (int64_t s = 0; s < count; ++s) {
            double t[2];
            double norm2 = 0.0;
            for (double& v : t) {
                v = rng::standard_normal(gen);
                norm2 += v * v;
            }
            const double u = rng::uniform01(gen);
            const double scale = radius * std::pow(u, 1.0 / 2) / std::sqrt(norm2);
            for (double& v : t) v = std::abs(v) * scale;
            if (t[0] < t[1]) std::swap(t[0], t[1]);
            sum += std::exp(geometry::log_radial_density_t(t, params));
        }
    }
    const double constant = std::numbers::pi * radius * radius / 4.0 / 2.0; // quarter disc, 1/2!
    const double replay = constant * sum / static_cast<double>(samples);
    CHECK(estimate.value() == doctest::Approx(replay).epsilon(1e-12));
}

TEST_CASE("collision scan groups exact squared entropies") {
    SUBCASE("the dimension-24 scan finds the known pair") {
        const auto report = scan_collisions(24);
        REQUIRE(!report.groups.empty());
        const auto at290 =
            std::find_if(report.groups.begin(), report.groups.end(),
                         [](const CollisionGroup& g) { return g.squared_quarter == 290; });
        REQUIRE(at290 != report.groups.end());
        REQUIRE(at290->members.size() == 2);
        CHECK(at290->members[0] == catalog::type_iv(18));
        CHECK(at290->members[1] == catalog::type_i(2, 12));
        CHECK_FALSE(at290->same_dimension_pair); // dimensions 18 and 24
    }
    SUBCASE("tiny scans have no collisions") {
        CHECK(scan_collisions(1).groups.empty());
        CHECK(scan_collisions(3).groups.empty());
    }
    SUBCASE("group structure invariants") {
        const auto report = scan_collisions(60);
        int64_t previous = -1;
        for (const auto& group : report.groups) {
            CHECK(group.squared_quarter > previous);
            previous = group.squared_quarter;
            CHECK(group.members.size() >= 2);
            for (const auto& member : group.members) {
                CHECK(entropy::entropy_hyperbolic(member).squared_quarter ==
                      group.squared_quarter);
            }
        }
    }
}
