#include "thermal/rational.hpp"

#include <cstdlib>
#include <stdexcept>

#include "thermal/errors.hpp"

namespace thermal {

long long floor_to_int(const Rational& r) {
    // boost::rational keeps the denominator positive.
    long long n = r.numerator();
    long long d = r.denominator();
    if (n >= 0) return n / d;
    return -((-n + d - 1) / d);
}

long long ceil_to_int(const Rational& r) {
    return -floor_to_int(-r);
}

Rational parse_rational(const std::string& text) {
    const auto bad = [&] {
        throw ParameterError("malformed rational '" + text + "'");
    };
    if (text.empty()) bad();
    auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            long long v = std::stoll(text, &used);
            if (used != text.size()) bad();
            return Rational(v);
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) bad();
        long long p = std::stoll(num, &used);
        if (used != num.size()) bad();
        long long q = std::stoll(den, &used);
        if (used != den.size()) bad();
        if (q == 0) bad();
        return Rational(p, q);
    } catch (const std::logic_error&) {
        bad();
    }
    return Rational(0);  // unreachable
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace thermal
