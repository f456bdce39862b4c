#include "codmetric/rational.hpp"

#include "codmetric/errors.hpp"

#include <cctype>

namespace codmetric {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::size_t start = 0;
    if (start < text.size() && (text[start] == '+' || text[start] == '-')) ++start;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!all_digits(text, start, text.size()))
            throw ParseError("not a rational: '" + text + "'");
        return Rational(BigInt(text));
    }
    if (!all_digits(text, start, slash) || !all_digits(text, slash + 1, text.size()))
        throw ParseError("not a rational: '" + text + "'");
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string rational_to_decimal(const Rational& r, unsigned digits) {
    BigInt num = numerator(r);
    const BigInt den = denominator(r);
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    BigInt whole = num / den;
    BigInt rem = num % den;
    out += whole.str();
    if (digits == 0) return out;
    out += '.';
    for (unsigned i = 0; i < digits; ++i) {
        rem *= 10;
        out += (rem / den).str();
        rem %= den;
    }
    return out;
}

} // namespace codmetric
