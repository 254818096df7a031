#include "refnet/rational.hpp"

#include <cctype>
#include <charconv>

namespace refnet {

namespace {

bool all_digits(std::string_view s) {
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

boost::multiprecision::mpz_int pow10(long exponent) {
    boost::multiprecision::mpz_int p = 1;
    boost::multiprecision::mpz_int base = 10;
    auto e = static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1u) p *= base;
        base *= base;
        e >>= 1u;
    }
    return p;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den)) return std::nullopt;
        boost::multiprecision::mpz_int d(std::string{den});
        if (d == 0) return std::nullopt;
        Rational value(boost::multiprecision::mpz_int(std::string{num}), d);
        if (negative) value = -value;
        return value;
    }

    long exponent = 0;
    if (auto e = text.find_first_of("eEdD"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        text = text.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (exp_text.empty() || !all_digits(exp_text) || exp_text.size() > 4) return std::nullopt;
        std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (exp_negative) exponent = -exponent;
    }

    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    if (!all_digits(int_part) || !all_digits(frac_part)) return std::nullopt;

    std::string digits;
    digits.reserve(int_part.size() + frac_part.size());
    digits.append(int_part).append(frac_part);
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));

    boost::multiprecision::mpz_int mantissa = digits.empty() ? 0 : boost::multiprecision::mpz_int(digits);
    exponent -= static_cast<long>(frac_part.size());

    Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                                   : Rational(mantissa, pow10(-exponent));
    if (negative) value = -value;
    return value;
}

std::string to_string(const Rational& value) {
    return value.str();
}

} // namespace refnet
