#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace gitstab {

// All arithmetic in the library is exact. Int is an arbitrary-precision
// integer; Rational is kept in lowest terms with positive denominator by
// the backend, which is exactly the invariant the stability criteria need.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rational_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Canonical text form: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rational& r)
{
    Int num = rational_num(r);
    Int den = rational_den(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

// Parses "p", "-p" or "p/q" with integer p, q and q > 0 after sign
// normalization. Decimal literals are rejected on purpose: accepting them
// would silently break the exactness contract.
inline Rational parse_rational(const std::string& text)
{
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("invalid rational literal '" + text +
                                    "' (expected \"p\" or \"p/q\")");
    };
    if (text.empty())
        return fail();
    auto slash = text.find('/');
    std::string num_part = (slash == std::string::npos) ? text : text.substr(0, slash);
    std::string den_part = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
    auto is_integer = [](const std::string& s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    if (!is_integer(num_part) || !is_integer(den_part))
        return fail();
    Int num(num_part);
    Int den(den_part);
    if (den == 0)
        throw std::invalid_argument("zero denominator in rational literal '" + text + "'");
    return Rational(num, den);
}

} // namespace gitstab
