#include "superlin/rational.hpp"

#include <cctype>

#include "superlin/errors.hpp"

namespace superlin {

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(std::string_view text) {
    auto bad = [&]() -> validity_error {
        return validity_error("not a rational literal: '" + std::string(text) + "'");
    };
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    auto read_digits = [&](BigInt& out) {
        std::size_t start = i;
        out = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out = out * 10 + (text[i] - '0');
            ++i;
        }
        if (i == start)
            throw bad();
    };
    BigInt num;
    read_digits(num);
    BigInt den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        read_digits(den);
        if (den == 0)
            throw validity_error("zero denominator in '" + std::string(text) + "'");
    }
    if (i != text.size())
        throw bad();
    Rational r(num, den);
    if (neg)
        r = -r;
    return r;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

} // namespace superlin
