#ifndef ZHAT_QSERIES_HPP
#define ZHAT_QSERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zhat/numeric.hpp"

namespace zhat {

Rational bernoulli_number(int n); // B_1 = -1/2
Rational bernoulli_polynomial(int n, const Rational& x);

// Hurwitz zeta at a nonpositive integer: zeta(-n, x) = -B_{n+1}(x) / (n + 1).
Rational zeta_value(int s, const Rational& x = Rational(1));

struct ZetaTerm {
    Rational coefficient;
    int s;
    Rational x;
    bool operator==(const ZetaTerm&) const = default;
};

// rational + sum of coefficient * zeta(s, x)
class ZetaCombo {
public:
    Rational rational{0};

    void add(const Rational& coefficient, int s, const Rational& x = Rational(1));
    void add_rational(const Rational& r) { rational += r; }
    const std::vector<ZetaTerm>& terms() const { return terms_; }

    ZetaCombo& operator+=(const ZetaCombo& other);
    ZetaCombo scaled(const Rational& f) const;

    bool empty() const { return rational == 0 && terms_.empty(); }
    bool has_zeta() const { return !terms_.empty(); }
    Rational value() const;
    bool operator==(const ZetaCombo&) const = default;

private:
    std::vector<ZetaTerm> terms_; // sorted by (x, s), no zero coefficients
};

class QSeries {
public:
    std::map<Rational, BigInt> terms; // absolute exponents
    ZetaCombo constant;
    Rational truncation_order{0};
    Rational prefactor_exponent{0};
    BigInt conductor{1};

    QSeries() = default;
    QSeries(const Rational& truncation, const BigInt& conductor);

    // term_insert: merges, drops cancelled terms
    void insert(const Rational& exponent, const BigInt& coefficient);
    BigInt coefficient(const Rational& exponent) const;

    // Common class of the exponents mod 1 moved into the prefactor,
    // represented in (-1/2, 1/2]; zero when classes differ.
    void normalize_prefactor();

    // Copy keeping only exponents <= order.
    QSeries truncated(const Rational& order) const;

    bool empty() const { return terms.empty() && constant.empty(); }
    bool operator==(const QSeries&) const = default;
};

QSeries series_add(const QSeries& a, const QSeries& b);
// factor * q^shift * s; a nonzero shift needs an empty constant
QSeries series_scale(const QSeries& s, const BigInt& factor, const Rational& shift = Rational(0));

enum class RenderMode { symbolic_constant, numeric_constant };

// "1 + 2zeta(-1) + 2zeta(0) - 2q^2 - 4q^4", "q^(1/3)*(-q - q^3)"
std::string render(const QSeries& s, RenderMode mode = RenderMode::symbolic_constant);
std::string render(const ZetaCombo& c);

// Inverse of render in symbolic mode.
QSeries parse_series(std::string_view text, const Rational& truncation, const BigInt& conductor);

// Exponent of the first differing term, or empty when equal through `order`.
std::optional<Rational> first_difference(const QSeries& a, const QSeries& b, const Rational& order);

} // namespace zhat

#endif
