#ifndef VOLENT_VERIFY_HPP
#define VOLENT_VERIFY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include "volent/catalog.hpp"
#include "volent/errors.hpp"

// Numerical verification of the closed-form entropies: maximize the
// directional growth exponent over the unit sphere, estimate geodesic-ball
// volume growth by integrating the radial density, and scan the catalog
// for entropy collisions.

namespace volent::verify {

using catalog::DomainSpec;
using catalog::ProductSpec;

/// Whether integration kernels run the OpenMP path or the serial reference.
/// Both produce bit-identical results: samples are tied to seed-derived
/// substreams per block and partial results are reduced in block order.
enum class Exec { Serial, Parallel };

/// Composite Gauss-Legendre rule, nested over the integration dimensions.
struct Quadrature {
    double panel_width = 0.25; // axis subdivision size
    int nodes = 16;            // points per panel
};

/// Seeded uniform sampling of the ball intersected with the positive
/// orthant; the ordering cones are handled by sorting each factor block and
/// dividing by the product of r_k!.
struct MonteCarlo {
    int64_t samples = 1'000'000;
    uint64_t seed = 0;
};

using Method = std::variant<Quadrature, MonteCarlo>;

/// Integral estimate carried in log space; exponentially growing volumes
/// overflow doubles well inside the radii of interest.
struct LogEstimate {
    double log_value = -std::numeric_limits<double>::infinity();
    double log_std_error = -std::numeric_limits<double>::infinity(); // -inf for quadrature

    double value() const { return std::exp(log_value); }
    double std_error() const { return std::exp(log_std_error); }
};

/// V(T): integral of the radial volume density over the geodesic ball of
/// radius T, normalized by the constant angular mass (which cancels in
/// every growth rate). Throws NonPositiveRadiusError for T <= 0 and
/// UnsupportedRankError for quadrature beyond total rank 3.
LogEstimate log_ball_volume(const ProductSpec& domain, double radius, const Method& method,
                            Exec exec = Exec::Parallel);
double ball_volume(const ProductSpec& domain, double radius, const Method& method,
                   Exec exec = Exec::Parallel);
double ball_volume(const DomainSpec& domain, double radius, const Method& method,
                   Exec exec = Exec::Parallel);

/// Radii, log-volumes and the fitted exponential growth rate.
struct GrowthEstimate {
    std::vector<double> radii;
    std::vector<double> log_volumes;
    double slope = 0.0;        // d(log V)/dT over the fit window, estimates Ent
    double slope_std_error = 0.0;
    int fit_window = 0;        // suffix length of radii used for the fit
    Method method;
};

/// Computes log V(T_i) for each radius and fits the slope by least squares
/// over the trailing fit_window points. fit_window <= 0 selects the default
/// window of max(4, ceil(0.4 n)). Throws FitDegenerateError when the window
/// has fewer than 4 points or fewer than 2 distinct radii.
GrowthEstimate growth_entropy(const ProductSpec& domain, const std::vector<double>& radii,
                              const Method& method, int fit_window = 0,
                              Exec exec = Exec::Parallel);
GrowthEstimate growth_entropy(const DomainSpec& domain, const std::vector<double>& radii,
                              const Method& method, int fit_window = 0,
                              Exec exec = Exec::Parallel);

struct MaximizeResult {
    double value = 0.0;
    std::vector<double> argmax; // unit vector
};

/// Maximizes the directional growth exponent over the unit sphere by
/// subgradient ascent with random restarts. The objective is piecewise
/// linear, so ascent with restarts is exact up to rounding.
MaximizeResult maximize_exponent(const DomainSpec& domain, int restarts = 50,
                                 uint64_t seed = 0);
MaximizeResult maximize_exponent(const ProductSpec& domain, int restarts = 50,
                                 uint64_t seed = 0);

/// Domains sharing one exact Ent^2/4 integer.
struct CollisionGroup {
    int64_t squared_quarter = 0;
    std::vector<DomainSpec> members;
    bool same_dimension_pair = false; // some two members share the dimension d
};

struct CollisionReport {
    int64_t max_dim = 0;
    std::vector<CollisionGroup> groups; // sorted by squared_quarter, each with >= 2 members
};

/// Groups the catalog up to max_dim by exact squared entropy.
CollisionReport scan_collisions(int64_t max_dim);

} // namespace volent::verify

#endif
