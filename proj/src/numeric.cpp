#include "zhat/numeric.hpp"
#include "zhat/error.hpp"

#include <limits>

namespace zhat {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_graph: return "invalid graph";
    case ErrorKind::non_generic: return "non-generic graph";
    case ErrorKind::no_chamber: return "no good chamber";
    case ErrorKind::not_positive_definite: return "not positive definite";
    case ErrorKind::positive_betti: return "b1 > 0";
    case ErrorKind::singular_matrix: return "singular matrix";
    case ErrorKind::inapplicable_move: return "inapplicable move";
    case ErrorKind::divergence: return "divergent lattice sum";
    case ErrorKind::regularization: return "regularization failed";
    case ErrorKind::conductor_mismatch: return "conductor mismatch";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::atypical: return "atypical color";
    case ErrorKind::closure: return "closure violated";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::unsupported: return "unsupported input";
    }
    return "error";
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

BigInt pos_mod(const BigInt& a, const BigInt& b)
{
    BigInt r = a % b;
    if (r < 0)
        r += (b < 0 ? BigInt(-b) : b);
    return r;
}

std::int64_t pos_mod(std::int64_t a, std::int64_t b)
{
    std::int64_t r = a % b;
    return r < 0 ? r + (b < 0 ? -b : b) : r;
}

Rational floor(const Rational& r)
{
    return Rational(floor_div(num(r), den(r)));
}

Rational frac(const Rational& r)
{
    return r - floor(r);
}

BigInt gcd(const BigInt& a, const BigInt& b)
{
    return mp::gcd(a, b);
}

BigInt lcm(const BigInt& a, const BigInt& b)
{
    if (a == 0 || b == 0)
        return 0;
    BigInt g = gcd(a, b);
    BigInt v = a / g * b;
    return v < 0 ? BigInt(-v) : v;
}

std::int64_t to_int64(const BigInt& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorKind::unsupported, "integer out of 64-bit range: " + v.str());
    return v.convert_to<std::int64_t>();
}

std::string to_string(const BigInt& v)
{
    return v.str();
}

std::string to_string(const Rational& r)
{
    if (den(r) == 1)
        return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    s = trim(s);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(BigInt(s));
        BigInt p(trim(s.substr(0, slash)));
        BigInt q(trim(s.substr(slash + 1)));
        if (q == 0)
            throw Error(ErrorKind::parse, "zero denominator in '" + s + "'");
        return make_rational(p, q);
    } catch (const std::runtime_error&) {
        throw Error(ErrorKind::parse, "not a rational number: '" + s + "'");
    }
}

} // namespace zhat
