#include "repzoo/rational.hpp"

#include "repzoo/error.hpp"

namespace repzoo {

std::string to_fraction_string(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

std::string to_display_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw ConfigError("malformed rational '" + std::string(whole) + "'");
    Integer value = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') throw ConfigError("malformed rational '" + std::string(whole) + "'");
        value = value * 10 + (text[i] - '0');
    }
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Integer ipow(const Integer& base, unsigned exponent) {
    Integer result = 1;
    Integer b = base;
    while (exponent) {
        if (exponent & 1u) result *= b;
        exponent >>= 1;
        if (exponent) b *= b;
    }
    return result;
}

}  // namespace repzoo
