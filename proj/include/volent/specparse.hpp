#ifndef VOLENT_SPECPARSE_HPP
#define VOLENT_SPECPARSE_HPP

#include <string>
#include <string_view>

#include "volent/catalog.hpp"

// Text form of domains: TYPE[":" params] with TYPE in {I, II, III, IV, V,
// VI, custom}, e.g. "I:2,12", "IV:18", "V", "custom:2,16,0". Products join
// factors with " x ". Formatting emits the canonical parameters, so every
// printed spec re-parses to an equal value.

namespace volent::specparse {

catalog::DomainSpec parse_domain(std::string_view text);
catalog::ProductSpec parse_product(std::string_view text);

std::string format(const catalog::DomainSpec& domain);
std::string format(const catalog::ProductSpec& product);

} // namespace volent::specparse

#endif
