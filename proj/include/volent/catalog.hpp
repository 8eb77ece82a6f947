#ifndef VOLENT_CATALOG_HPP
#define VOLENT_CATALOG_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "volent/errors.hpp"

namespace volent::catalog {

/// Classification tag of an irreducible bounded symmetric domain.
enum class Kind { I, II, III, IV, V, VI, Custom };

std::string kind_name(Kind kind);

/// An irreducible domain identified by its type tag and the integer
/// invariants (r, a, b), with dimension d and genus derived from them.
///
/// Invariants maintained by the factory functions:
///   2*d   == r*(2*b + 2 + a*(r-1))
///   genus == (r-1)*a + b + 2
struct DomainSpec {
    Kind kind = Kind::Custom;
    std::array<int64_t, 2> params{0, 0}; // (n,m) for I; (n,0) for II/III/IV; unused otherwise
    int64_t r = 0;
    int64_t a = 0;
    int64_t b = 0;
    int64_t d = 0;     // complex dimension
    int64_t genus = 0; // gamma

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// Canonical ordering used by the enumerator: (d, kind, params, r, a, b).
bool operator<(const DomainSpec& lhs, const DomainSpec& rhs);

// Factories for the six table columns. TypeI silently swaps its parameters
// so that n <= m; the stored invariants are symmetric in the labeling.
DomainSpec type_i(int64_t n, int64_t m);
DomainSpec type_ii(int64_t n);  // n >= 5
DomainSpec type_iii(int64_t n); // n >= 2
DomainSpec type_iv(int64_t n);  // n >= 5
DomainSpec type_v();
DomainSpec type_vi();

/// A domain given directly by its invariants. r >= 1, a >= 0, b >= 0;
/// dimension and genus are derived. At rank 1 the stored a is forced to 0
/// (it never influences any computed quantity).
DomainSpec custom(int64_t r, int64_t a, int64_t b);

/// Same, but validates an externally supplied dimension against the
/// derived one. Throws InconsistentCustomError on mismatch.
DomainSpec custom_with_dim(int64_t r, int64_t a, int64_t b, int64_t d);

/// Every irreducible domain with d <= max_dim, each exactly once under the
/// table's canonical parameter ranges, sorted by (d, kind, params).
std::vector<DomainSpec> enumerate_domains(int64_t max_dim);

/// An ordered product of irreducible factors. Every scalar computed from a
/// product is symmetric in the factor order.
struct ProductSpec {
    std::vector<DomainSpec> factors;

    ProductSpec() = default;
    explicit ProductSpec(std::vector<DomainSpec> f);
    ProductSpec(std::initializer_list<DomainSpec> f);

    int64_t dimension() const;
    int64_t total_rank() const;

    friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
};

} // namespace volent::catalog

#endif
