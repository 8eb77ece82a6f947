#include "volent/catalog.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <utility>

namespace volent::catalog {

namespace {

// Parameter cap keeping every derived quantity (including the exact
// integer Ent^2/4, which sums r terms of size up to (b+1+a(r-1))^2)
// inside int64.
constexpr int64_t kMaxParam = 1'000'000;

void check_param(int64_t value, const char* name) {
    if (value < 0 || value > kMaxParam) {
        throw OutOfRangeError(std::string(name) + " out of range [0, 10^6]: " +
                              std::to_string(value));
    }
}

DomainSpec finish(Kind kind, std::array<int64_t, 2> params, int64_t r, int64_t a, int64_t b) {
    DomainSpec spec;
    spec.kind = kind;
    spec.params = params;
    spec.r = r;
    spec.a = a;
    spec.b = b;
    // r*(2b+2+a(r-1)) is always even: a*r*(r-1) is even and r*(2b+2) is even.
    spec.d = r * (2 * b + 2 + a * (r - 1)) / 2;
    spec.genus = (r - 1) * a + b + 2;
    return spec;
}

} // namespace

std::string kind_name(Kind kind) {
    switch (kind) {
    case Kind::I: return "I";
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    case Kind::V: return "V";
    case Kind::VI: return "VI";
    case Kind::Custom: return "custom";
    }
    return "?";
}

bool operator<(const DomainSpec& lhs, const DomainSpec& rhs) {
    return std::tie(lhs.d, lhs.kind, lhs.params, lhs.r, lhs.a, lhs.b) <
           std::tie(rhs.d, rhs.kind, rhs.params, rhs.r, rhs.a, rhs.b);
}

DomainSpec type_i(int64_t n, int64_t m) {
    if (n > m) std::swap(n, m);
    if (n < 1) throw OutOfRangeError("type I requires n >= 1");
    check_param(m, "m");
    const int64_t a = (n >= 2) ? 2 : 0;
    return finish(Kind::I, {n, m}, n, a, m - n);
}

DomainSpec type_ii(int64_t n) {
    if (n < 5) throw OutOfRangeError("type II requires n >= 5, got " + std::to_string(n));
    check_param(n, "n");
    const int64_t b = (n % 2 == 0) ? 0 : 2;
    return finish(Kind::II, {n, 0}, n / 2, 4, b);
}

DomainSpec type_iii(int64_t n) {
    if (n < 2) throw OutOfRangeError("type III requires n >= 2, got " + std::to_string(n));
    check_param(n, "n");
    return finish(Kind::III, {n, 0}, n, 1, 0);
}

DomainSpec type_iv(int64_t n) {
    if (n < 5) throw OutOfRangeError("type IV requires n >= 5, got " + std::to_string(n));
    check_param(n, "n");
    return finish(Kind::IV, {n, 0}, 2, n - 2, 0);
}

DomainSpec type_v() { return finish(Kind::V, {0, 0}, 2, 6, 4); }

DomainSpec type_vi() { return finish(Kind::VI, {0, 0}, 3, 8, 0); }

DomainSpec custom(int64_t r, int64_t a, int64_t b) {
    if (r < 1) throw OutOfRangeError("rank must be >= 1, got " + std::to_string(r));
    check_param(r, "r");
    check_param(a, "a");
    check_param(b, "b");
    if (r == 1) a = 0; // inert at rank 1, stored as 0 for determinism
    // the exact squared entropy r*(b+1+a(r-1))^2 must stay within int64
    const auto top = static_cast<__int128>(b) + 1 + static_cast<__int128>(a) * (r - 1);
    if (static_cast<__int128>(r) * top * top >
        static_cast<__int128>(std::numeric_limits<int64_t>::max())) {
        throw OutOfRangeError("invariants too large for exact entropy arithmetic");
    }
    return finish(Kind::Custom, {0, 0}, r, a, b);
}

DomainSpec custom_with_dim(int64_t r, int64_t a, int64_t b, int64_t d) {
    DomainSpec spec = custom(r, a, b);
    if (spec.d != d) {
        throw InconsistentCustomError("dimension " + std::to_string(d) +
                                      " inconsistent with invariants (derived " +
                                      std::to_string(spec.d) + ")");
    }
    return spec;
}

std::vector<DomainSpec> enumerate_domains(int64_t max_dim) {
    if (max_dim < 1) throw OutOfRangeError("max_dim must be >= 1");
    if (max_dim > kMaxParam) throw OutOfRangeError("max_dim capped at 10^6");

    std::vector<DomainSpec> out;
    for (int64_t n = 1; n * n <= max_dim; ++n) {
        for (int64_t m = n; n * m <= max_dim; ++m) out.push_back(type_i(n, m));
    }
    for (int64_t n = 5; n * (n - 1) / 2 <= max_dim; ++n) out.push_back(type_ii(n));
    for (int64_t n = 2; n * (n + 1) / 2 <= max_dim; ++n) out.push_back(type_iii(n));
    for (int64_t n = 5; n <= max_dim; ++n) out.push_back(type_iv(n));
    if (max_dim >= 16) out.push_back(type_v());
    if (max_dim >= 27) out.push_back(type_vi());

    std::sort(out.begin(), out.end());
    return out;
}

ProductSpec::ProductSpec(std::vector<DomainSpec> f) : factors(std::move(f)) {
    if (factors.empty()) throw OutOfRangeError("product needs at least one factor");
}

ProductSpec::ProductSpec(std::initializer_list<DomainSpec> f)
    : ProductSpec(std::vector<DomainSpec>(f)) {}

int64_t ProductSpec::dimension() const {
    int64_t total = 0;
    for (const auto& factor : factors) total += factor.d;
    return total;
}

int64_t ProductSpec::total_rank() const {
    int64_t total = 0;
    for (const auto& factor : factors) total += factor.r;
    return total;
}

} // namespace volent::catalog
