#ifndef VOLENT_ENTROPY_HPP
#define VOLENT_ENTROPY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "volent/catalog.hpp"

namespace volent::entropy {

using catalog::DomainSpec;
using catalog::ProductSpec;

/// Closed-form volume entropy of a domain with the hyperbolic metric.
///
/// The square of the entropy divided by four is an exact integer,
/// Ent^2/4 = sum_j (b+1+a(r-j))^2, kept alongside the floating value so
/// entropy comparisons between domains can be done exactly.
struct EntropyResult {
    double value = 0.0;              // Ent, equals 2*sqrt(squared_quarter)
    int64_t squared_quarter = 0;     // Ent^2/4, exact
    std::vector<double> optimizer;   // unit vector attaining the growth exponent
};

/// Ent = 2*sqrt(sum_{j=1}^{r} (b+1+a(r-j))^2), maximized at
/// x_k proportional to b+1+a(r-k).
EntropyResult entropy_hyperbolic(const DomainSpec& domain);

/// Ent(prod) = sqrt(sum_k Ent_k^2); the squared quarters add exactly and
/// the optimizer concatenates the per-factor blocks.
EntropyResult entropy_product(const ProductSpec& product);

/// Entropy with respect to the Bergman metric g_B = genus * g_hyp;
/// distances rescale by sqrt(genus), so the entropy divides by it.
double entropy_bergman(const DomainSpec& domain);

/// Growth exponent of the volume density in direction x:
///   E(x) = 2(b+1) sum_j |x_j| + 2a sum_j (r-j) |x|_(j)
/// with |x|_(1) >= ... >= |x|_(r) the descending sort of absolute values.
/// The entropy is the maximum of E over the unit sphere.
/// Throws LengthMismatchError when x.size() != domain.r.
double directional_exponent(std::span<const double> x, const DomainSpec& domain);

} // namespace volent::entropy

#endif
