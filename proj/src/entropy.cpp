#include "volent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace volent::entropy {

namespace {

// The j-th exponent weight, j counted from 1: b+1+a(r-j). Decreasing in j.
int64_t weight(const DomainSpec& domain, int64_t j) {
    return domain.b + 1 + domain.a * (domain.r - j);
}

} // namespace

EntropyResult entropy_hyperbolic(const DomainSpec& domain) {
    EntropyResult result;
    result.optimizer.reserve(static_cast<size_t>(domain.r));
    for (int64_t j = 1; j <= domain.r; ++j) {
        const int64_t w = weight(domain, j);
        result.squared_quarter += w * w;
        result.optimizer.push_back(static_cast<double>(w));
    }
    const double norm = std::sqrt(static_cast<double>(result.squared_quarter));
    for (double& x : result.optimizer) x /= norm;
    result.value = 2.0 * norm;
    return result;
}

EntropyResult entropy_product(const ProductSpec& product) {
    EntropyResult result;
    __int128 total = 0; // factor sums are individually int64-safe, not jointly
    for (const auto& factor : product.factors) {
        for (int64_t j = 1; j <= factor.r; ++j) {
            const int64_t w = weight(factor, j);
            total += static_cast<__int128>(w) * w;
            result.optimizer.push_back(static_cast<double>(w));
        }
    }
    if (total > static_cast<__int128>(std::numeric_limits<int64_t>::max())) {
        throw OutOfRangeError("product entropy exceeds exact integer range");
    }
    result.squared_quarter = static_cast<int64_t>(total);
    const double norm = std::sqrt(static_cast<double>(result.squared_quarter));
    for (double& x : result.optimizer) x /= norm;
    result.value = 2.0 * norm;
    return result;
}

double entropy_bergman(const DomainSpec& domain) {
    return entropy_hyperbolic(domain).value / std::sqrt(static_cast<double>(domain.genus));
}

double directional_exponent(std::span<const double> x, const DomainSpec& domain) {
    if (std::ssize(x) != domain.r) {
        throw LengthMismatchError("direction has length " + std::to_string(x.size()) +
                                  ", domain rank is " + std::to_string(domain.r));
    }
    std::vector<double> sorted_abs(x.size());
    std::transform(x.begin(), x.end(), sorted_abs.begin(),
                   [](double v) { return std::abs(v); });
    std::sort(sorted_abs.begin(), sorted_abs.end(), std::greater<>());

    double value = 0.0;
    for (int64_t j = 1; j <= domain.r; ++j) {
        value += 2.0 * static_cast<double>(weight(domain, j)) *
                 sorted_abs[static_cast<size_t>(j - 1)];
    }
    return value;
}

} // namespace volent::entropy
