#include "geocycle/rational.hpp"

#include "geocycle/errors.hpp"

#include <cctype>

namespace geocycle {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string s, const std::string& original) {
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (!all_digits(s)) throw InputError("not a rational: '" + original + "'");
    BigInt v(s);
    return negative ? -v : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw InputError("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.find('/', slash + 1) != std::string::npos || s.find('.') != std::string::npos)
            throw InputError("not a rational: '" + text + "'");
        BigInt num = parse_integer(s.substr(0, slash), text);
        BigInt den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw InputError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('.', dot + 1) != std::string::npos)
            throw InputError("not a rational: '" + text + "'");
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        bool negative = false;
        if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
            negative = head[0] == '-';
            head.erase(0, 1);
        }
        if (head.empty()) head = "0";
        if (!all_digits(head) || !all_digits(frac))
            throw InputError("not a rational: '" + text + "'");
        BigInt den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        BigInt num = BigInt(head) * den + BigInt(frac);
        Rational r(num, den);
        return negative ? Rational(-r) : r;
    }

    return Rational(parse_integer(s, text));
}

std::string format_rational(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational rational_abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational pow2_inverse(unsigned k) {
    BigInt den = 1;
    den <<= k;
    return Rational(1, den);
}

}  // namespace geocycle
