#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "volent/geometry.hpp"
#include "volent/jts.hpp"
#include "volent/rng.hpp"

using namespace volent;
using namespace volent::geometry;

namespace {

EigenvalueVector random_descending(std::mt19937_64& gen, size_t n, double lo, double hi) {
    std::vector<double> values(n);
    for (double& v : values) v = lo + (hi - lo) * rng::uniform01(gen);
    std::sort(values.begin(), values.end(), std::greater<>());
    return EigenvalueVector(std::move(values));
}

} // namespace

TEST_CASE("eigenvalue vectors validate ordering and sign") {
    CHECK_NOTHROW(EigenvalueVector({0.5, 0.5, 0.1}));
    CHECK_NOTHROW(EigenvalueVector(std::vector<double>{}));
    CHECK_THROWS_AS(EigenvalueVector({0.1, 0.5}), Error);
    CHECK_THROWS_AS(EigenvalueVector({0.5, -0.1}), Error);
    CHECK(EigenvalueVector({3.0, 2.0, 1.0}).is_regular(3));
    CHECK_FALSE(EigenvalueVector({3.0, 2.0}).is_regular(3));
    CHECK_FALSE(EigenvalueVector({3.0, 3.0, 1.0}).is_regular(3));
    CHECK_FALSE(EigenvalueVector({3.0, 2.0, 0.0}).is_regular(3));
}

TEST_CASE("exponential map is componentwise tanh") {
    CHECK(exp_origin(EigenvalueVector({0.0}))[0] == 0.0);
    const auto image = exp_origin(EigenvalueVector({1.0, 0.5}));
    CHECK(image[0] == doctest::Approx(0.76159415595576489).epsilon(1e-15));
    CHECK(image[1] == doctest::Approx(0.46211715726000976).epsilon(1e-15));
    CHECK(image[0] < 1.0);
    CHECK(image[0] > image[1]); // order preserved
}

TEST_CASE("distance from the origin") {
    CHECK(dist_origin(EigenvalueVector({0.0})) == 0.0);
    CHECK(dist_origin(EigenvalueVector({std::tanh(1.0)})) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dist_origin(EigenvalueVector({0.5, 0.2})) ==
          doctest::Approx(0.58552346552161072).epsilon(1e-15));
    CHECK_THROWS_AS(dist_origin(EigenvalueVector({1.0})), OutsideDomainError);
    CHECK_THROWS_AS(dist_origin(EigenvalueVector({1.5, 0.2})), OutsideDomainError);
}

TEST_CASE("duality map lands inside the unit ball") {
    CHECK(duality_map(EigenvalueVector({0.0}))[0] == 0.0);
    CHECK(duality_map(EigenvalueVector({1.0}))[0] ==
          doctest::Approx(0.70710678118654752).epsilon(1e-15));
    const auto far = duality_map(EigenvalueVector({1e8, 1e4}));
    CHECK(far[0] < 1.0);
    CHECK(far[1] < 1.0);
    CHECK(far[0] > 0.999999);
    CHECK(far[0] > far[1]);
}

TEST_CASE("dual distance closed form") {
    CHECK(dual_distance(EigenvalueVector({0.0})) == 0.0);
    CHECK(dual_distance(EigenvalueVector({std::sinh(2.0)})) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dual_distance(EigenvalueVector({1.0, 1.0})) ==
          doctest::Approx(1.2464504802804610).epsilon(1e-15));
}

TEST_CASE("duality map composed with the distance equals the dual distance") {
    std::mt19937_64 gen(7);
    for (size_t rank : {1u, 2u, 3u, 5u}) {
        int violations = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto t = random_descending(gen, rank, 1e-6, 10.0);
            const double direct = dual_distance(t);
            const double composed = dist_origin(duality_map(t));
            if (std::abs(direct - composed) > 1e-12) ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("exp and dist invert to the Euclidean norm") {
    std::mt19937_64 gen(11);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = random_descending(gen, 4, 0.0, 5.0);
        double norm = 0.0;
        for (double v : t.values()) norm += v * v;
        norm = std::sqrt(norm);
        if (std::abs(dist_origin(exp_origin(t)) - norm) > 1e-12 * (1.0 + norm))
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("radial density formula") {
    SUBCASE("rank one is a plain power") {
        const RadialDensityParams p(1, 0, 2);
        const double lambda[] = {0.7};
        CHECK(radial_density(lambda, p) == doctest::Approx(std::pow(0.7, 5)).epsilon(1e-15));
    }
    SUBCASE("hand-evaluated rank two value") {
        const RadialDensityParams p(2, 1, 0);
        const double lambda[] = {0.5, 0.2};
        CHECK(radial_density(lambda, p) == doctest::Approx(0.021).epsilon(1e-14));
    }
    SUBCASE("ties vanish when a > 0") {
        const RadialDensityParams p(2, 2, 0);
        const double lambda[] = {0.3, 0.3};
        CHECK(radial_density(lambda, p) == 0.0);
        const double t[] = {0.3, 0.3};
        CHECK(radial_density_t(t, p) == 0.0);
    }
    SUBCASE("positive exactly on regular vectors") {
        const RadialDensityParams p(3, 2, 1);
        const double regular[] = {0.9, 0.5, 0.1};
        CHECK(radial_density(regular, p) > 0.0);
        const double zero_tail[] = {0.9, 0.5, 0.0};
        CHECK(radial_density(zero_tail, p) == 0.0);
    }
}

TEST_CASE("substituted density") {
    SUBCASE("rank one b=0 is sinh cosh") {
        const RadialDensityParams p(1, 0, 0);
        const double t[] = {0.8};
        CHECK(radial_density_t(t, p) ==
              doctest::Approx(std::sinh(0.8) * std::cosh(0.8)).epsilon(1e-14));
    }
    SUBCASE("frozen rank two value") {
        const RadialDensityParams p(2, 1, 0);
        const double t[] = {1.0, 0.5};
        CHECK(radial_density_t(t, p) ==
              doctest::Approx(1.1823141779060497).epsilon(1e-14));
    }
    SUBCASE("change of variables against the direct density") {
        std::mt19937_64 gen(13);
        int violations = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const size_t rank = 1 + static_cast<size_t>(gen() % 4);
            const RadialDensityParams p(static_cast<int64_t>(rank),
                                        static_cast<int64_t>(gen() % 4),
                                        static_cast<int64_t>(gen() % 4));
            // near-ties make the direct difference products cancel; keep the
            // entries separated so both routes are well conditioned
            EigenvalueVector t = random_descending(gen, rank, 1e-3, 3.0);
            bool separated = true;
            for (size_t i = 0; i + 1 < t.size(); ++i) {
                if (t[i] - t[i + 1] < 1e-2) separated = false;
            }
            if (!separated) continue;
            std::vector<double> lambda(rank);
            double jacobian = 1.0;
            for (size_t i = 0; i < rank; ++i) {
                lambda[i] = std::sinh(t[i]);
                jacobian *= std::cosh(t[i]);
            }
            const double direct = radial_density(lambda, p) * jacobian;
            const double substituted = radial_density_t(t.values(), p);
            if (std::abs(direct - substituted) > 1e-12 * (1.0 + std::abs(direct)))
                ++violations;
        }
        CHECK(violations == 0);
    }
    SUBCASE("log form is finite and consistent on large arguments") {
        const RadialDensityParams p(2, 16, 0);
        const double t[] = {25.0, 12.0};
        const double logd = log_radial_density_t(t, p);
        CHECK(std::isfinite(logd));
        CHECK(logd > 500.0); // far beyond double range in linear space
        const double moderate[] = {2.0, 1.0};
        CHECK(std::exp(log_radial_density_t(moderate, p)) ==
              doctest::Approx(radial_density_t(moderate, p)).epsilon(1e-12));
    }
}

TEST_CASE("distance agrees with the matrix realization across unitary conjugation") {
    std::mt19937_64 gen(17);
    const jts::MatrixSpace space(2, 3);
    const auto random_unitary = [&](int n) -> Eigen::MatrixXcd {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = std::complex<double>(rng::standard_normal(gen),
                                               rng::standard_normal(gen));
        return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ() *
               Eigen::MatrixXcd::Identity(n, n);
    };
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::MatrixXcd z(2, 3);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j)
                z(i, j) = 0.3 * std::complex<double>(rng::standard_normal(gen),
                                                     rng::standard_normal(gen));
        if (!jts::is_in_domain(space, z)) continue;
        const auto decomposition = space.spectral_decompose(z);
        std::vector<double> lambda = decomposition.eigenvalues;

        const Eigen::MatrixXcd rotated = random_unitary(2) * z * random_unitary(3);
        const auto rotated_decomposition = space.spectral_decompose(rotated);
        // distance depends only on the eigenvalues
        CHECK(dist_origin(std::span<const double>(lambda)) ==
              doctest::Approx(dist_origin(std::span<const double>(
                                  rotated_decomposition.eigenvalues)))
                  .epsilon(1e-9));
    }
}
