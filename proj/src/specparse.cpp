#include "volent/specparse.hpp"

#include <charconv>
#include <vector>

#include "volent/errors.hpp"

namespace volent::specparse {

using catalog::DomainSpec;
using catalog::Kind;
using catalog::ProductSpec;

namespace {

struct Token {
    std::string_view text;
    size_t offset;
};

std::vector<Token> split_ws(std::string_view text) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        const size_t begin = i;
        while (i < text.size() && text[i] != ' ') ++i;
        if (i > begin) tokens.push_back({text.substr(begin, i - begin), begin});
    }
    return tokens;
}

int64_t parse_int(std::string_view text, size_t offset) {
    int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("expected an integer, got '" + std::string(text) + "'",
                         offset + static_cast<size_t>(ptr - first));
    }
    return value;
}

std::vector<int64_t> parse_params(std::string_view text, size_t offset, size_t expected,
                                  std::string_view type_name) {
    std::vector<int64_t> params;
    size_t start = 0;
    while (true) {
        const size_t comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - start);
        params.push_back(parse_int(piece, offset + start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (params.size() != expected) {
        throw ParseError("type " + std::string(type_name) + " takes " +
                             std::to_string(expected) + " parameter(s), got " +
                             std::to_string(params.size()),
                         offset);
    }
    return params;
}

DomainSpec parse_domain_token(std::string_view text, size_t offset) {
    const size_t colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const bool has_params = colon != std::string_view::npos;
    const std::string_view params =
        has_params ? text.substr(colon + 1) : std::string_view{};
    const size_t params_offset = has_params ? offset + colon + 1 : offset;

    const auto need_params = [&](size_t count) {
        if (!has_params || params.empty()) {
            throw ParseError("type " + std::string(name) + " needs parameters",
                             offset + text.size());
        }
        return parse_params(params, params_offset, count, name);
    };
    const auto no_params = [&] {
        if (has_params) {
            throw ParseError("type " + std::string(name) + " takes no parameters",
                             offset + colon);
        }
    };

    try {
        if (name == "I") {
            const auto p = need_params(2);
            return catalog::type_i(p[0], p[1]);
        }
        if (name == "II") return catalog::type_ii(need_params(1)[0]);
        if (name == "III") return catalog::type_iii(need_params(1)[0]);
        if (name == "IV") return catalog::type_iv(need_params(1)[0]);
        if (name == "V") {
            no_params();
            return catalog::type_v();
        }
        if (name == "VI") {
            no_params();
            return catalog::type_vi();
        }
        if (name == "custom") {
            const auto p = need_params(3);
            return catalog::custom(p[0], p[1], p[2]);
        }
    } catch (const OutOfRangeError&) {
        throw; // range problems are not parse errors
    }
    throw ParseError("unknown domain type '" + std::string(name) + "'", offset);
}

} // namespace

DomainSpec parse_domain(std::string_view text) {
    const auto tokens = split_ws(text);
    if (tokens.empty()) throw ParseError("empty domain spec", 0);
    if (tokens.size() > 1) {
        throw ParseError("expected a single domain, found more input", tokens[1].offset);
    }
    return parse_domain_token(tokens[0].text, tokens[0].offset);
}

ProductSpec parse_product(std::string_view text) {
    const auto tokens = split_ws(text);
    if (tokens.empty()) throw ParseError("empty product spec", 0);
    std::vector<DomainSpec> factors;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i % 2 == 1) {
            if (tokens[i].text != "x") {
                throw ParseError("expected 'x' between factors", tokens[i].offset);
            }
            continue;
        }
        factors.push_back(parse_domain_token(tokens[i].text, tokens[i].offset));
    }
    if (tokens.size() % 2 == 0) {
        throw ParseError("dangling 'x' at end of product", tokens.back().offset);
    }
    return ProductSpec(std::move(factors));
}

std::string format(const DomainSpec& domain) {
    switch (domain.kind) {
    case Kind::I:
        return "I:" + std::to_string(domain.params[0]) + "," +
               std::to_string(domain.params[1]);
    case Kind::II: return "II:" + std::to_string(domain.params[0]);
    case Kind::III: return "III:" + std::to_string(domain.params[0]);
    case Kind::IV: return "IV:" + std::to_string(domain.params[0]);
    case Kind::V: return "V";
    case Kind::VI: return "VI";
    case Kind::Custom:
        return "custom:" + std::to_string(domain.r) + "," + std::to_string(domain.a) +
               "," + std::to_string(domain.b);
    }
    return "?";
}

std::string format(const ProductSpec& product) {
    std::string out;
    for (size_t i = 0; i < product.factors.size(); ++i) {
        if (i > 0) out += " x ";
        out += format(product.factors[i]);
    }
    return out;
}

} // namespace volent::specparse
