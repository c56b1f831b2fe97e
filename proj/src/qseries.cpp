#include "zhat/qseries.hpp"
#include "zhat/error.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace zhat {

Rational bernoulli_number(int n)
{
    static std::mutex lock;
    static std::vector<Rational> cache{Rational(1)};
    if (n < 0)
        throw Error(ErrorKind::domain, "negative Bernoulli index");
    std::lock_guard<std::mutex> guard(lock);
    while (static_cast<int>(cache.size()) <= n) {
        const int m = static_cast<int>(cache.size());
        // sum_{k<m} C(m+1,k) B_k = -(m+1) B_m
        Rational acc(0);
        BigInt binom(1);
        for (int k = 0; k < m; ++k) {
            acc += Rational(binom) * cache[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        cache.push_back(-acc / Rational(m + 1));
    }
    return cache[n];
}

Rational bernoulli_polynomial(int n, const Rational& x)
{
    Rational acc(0);
    BigInt binom(1);
    std::vector<Rational> powers(n + 1, Rational(1));
    for (int i = 1; i <= n; ++i)
        powers[i] = powers[i - 1] * x;
    for (int k = 0; k <= n; ++k) {
        acc += Rational(binom) * bernoulli_number(k) * powers[n - k];
        binom = binom * (n - k) / (k + 1);
    }
    return acc;
}

Rational zeta_value(int s, const Rational& x)
{
    if (s > 0)
        throw Error(ErrorKind::domain, "zeta_value needs s <= 0, got " + std::to_string(s));
    if (x <= 0 || x > 1)
        throw Error(ErrorKind::domain, "zeta_value needs 0 < x <= 1");
    const int n = -s;
    return -bernoulli_polynomial(n + 1, x) / Rational(n + 1);
}

void ZetaCombo::add(const Rational& coefficient, int s, const Rational& x)
{
    if (s > 0)
        throw Error(ErrorKind::domain, "zeta term needs s <= 0");
    if (x <= 0 || x > 1)
        throw Error(ErrorKind::domain, "zeta term needs 0 < x <= 1");
    if (coefficient == 0)
        return;
    auto key = [](const ZetaTerm& t) { return std::make_pair(t.x, t.s); };
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(x, s),
                                [&](const ZetaTerm& t, const std::pair<Rational, int>& k) { return key(t) < k; });
    if (pos != terms_.end() && pos->x == x && pos->s == s) {
        pos->coefficient += coefficient;
        if (pos->coefficient == 0)
            terms_.erase(pos);
        return;
    }
    terms_.insert(pos, ZetaTerm{coefficient, s, x});
}

ZetaCombo& ZetaCombo::operator+=(const ZetaCombo& other)
{
    rational += other.rational;
    for (const auto& t : other.terms_)
        add(t.coefficient, t.s, t.x);
    return *this;
}

ZetaCombo ZetaCombo::scaled(const Rational& f) const
{
    ZetaCombo out;
    out.rational = rational * f;
    for (const auto& t : terms_)
        out.add(t.coefficient * f, t.s, t.x);
    return out;
}

Rational ZetaCombo::value() const
{
    Rational v = rational;
    for (const auto& t : terms_)
        v += t.coefficient * zeta_value(t.s, t.x);
    return v;
}

QSeries::QSeries(const Rational& truncation, const BigInt& conductor_)
    : truncation_order(truncation), conductor(conductor_)
{
    if (conductor <= 0)
        throw Error(ErrorKind::domain, "conductor must be positive");
}

void QSeries::insert(const Rational& exponent, const BigInt& coefficient)
{
    if (exponent > truncation_order)
        throw Error(ErrorKind::domain, "exponent " + to_string(exponent) + " beyond truncation order " +
                                           to_string(truncation_order));
    if (conductor % den(exponent) != 0)
        throw Error(ErrorKind::conductor_mismatch,
                    "exponent " + to_string(exponent) + " incompatible with conductor " + conductor.str());
    if (coefficient == 0)
        return;
    auto it = terms.find(exponent);
    if (it == terms.end()) {
        terms.emplace(exponent, coefficient);
        return;
    }
    it->second += coefficient;
    if (it->second == 0)
        terms.erase(it);
}

BigInt QSeries::coefficient(const Rational& exponent) const
{
    auto it = terms.find(exponent);
    return it == terms.end() ? BigInt(0) : it->second;
}

void QSeries::normalize_prefactor()
{
    prefactor_exponent = 0;
    if (terms.empty())
        return;
    Rational f = frac(terms.begin()->first);
    for (const auto& [e, c] : terms)
        if (frac(e) != f)
            return;
    if (f > Rational(1, 2))
        f -= 1;
    if (f != 0 && !constant.empty())
        return;
    prefactor_exponent = f;
}

QSeries QSeries::truncated(const Rational& order) const
{
    QSeries out = *this;
    out.truncation_order = std::min(order, truncation_order);
    for (auto it = out.terms.begin(); it != out.terms.end();)
        if (it->first > out.truncation_order)
            it = out.terms.erase(it);
        else
            ++it;
    return out;
}

QSeries series_add(const QSeries& a, const QSeries& b)
{
    if (a.conductor != b.conductor)
        throw Error(ErrorKind::conductor_mismatch,
                    "conductors " + a.conductor.str() + " and " + b.conductor.str() + " differ");
    QSeries out(std::min(a.truncation_order, b.truncation_order), a.conductor);
    out.constant = a.constant;
    out.constant += b.constant;
    for (const auto* s : {&a, &b})
        for (const auto& [e, c] : s->terms)
            if (e <= out.truncation_order)
                out.insert(e, c);
    out.normalize_prefactor();
    return out;
}

QSeries series_scale(const QSeries& s, const BigInt& factor, const Rational& shift)
{
    if (shift != 0 && !s.constant.empty())
        throw Error(ErrorKind::domain, "cannot shift a series with a regularized constant");
    BigInt cond = s.conductor;
    if (cond % den(shift) != 0)
        cond = lcm(cond, den(shift));
    QSeries out(s.truncation_order + shift, cond);
    out.constant = s.constant.scaled(Rational(factor));
    for (const auto& [e, c] : s.terms)
        out.insert(e + shift, c * factor);
    out.normalize_prefactor();
    return out;
}

namespace {

std::string q_power(const Rational& e)
{
    if (e == 0)
        return "";
    if (e == 1)
        return "q";
    if (is_integer(e) && e > 0)
        return "q^" + to_string(e);
    return "q^(" + to_string(e) + ")";
}

void append_signed(std::string& out, bool negative, const std::string& body)
{
    if (out.empty())
        out = (negative ? "-" : "") + body;
    else
        out += (negative ? " - " : " + ") + body;
}

void append_constant(std::string& out, const ZetaCombo& c)
{
    if (c.rational != 0)
        append_signed(out, c.rational < 0, to_string(Rational(abs(c.rational))));
    for (const auto& t : c.terms()) {
        Rational a = abs(t.coefficient);
        std::string coef = a == 1 ? "" : is_integer(a) ? to_string(a) : "(" + to_string(a) + ")";
        std::string arg = std::to_string(t.s);
        if (t.x != 1)
            arg += "," + to_string(t.x);
        append_signed(out, t.coefficient < 0, coef + "zeta(" + arg + ")");
    }
}

void append_terms(std::string& out, const QSeries& s, const Rational& shift)
{
    for (const auto& [e, c] : s.terms) {
        BigInt a = c < 0 ? BigInt(-c) : c;
        Rational rel = e - shift;
        std::string body;
        if (rel == 0)
            body = a.str();
        else
            body = (a == 1 ? std::string() : a.str()) + q_power(rel);
        append_signed(out, c < 0, body);
    }
}

} // namespace

std::string render(const ZetaCombo& c)
{
    std::string out;
    append_constant(out, c);
    return out.empty() ? "0" : out;
}

std::string render(const QSeries& s, RenderMode mode)
{
    std::string out;
    if (mode == RenderMode::numeric_constant) {
        Rational v = s.constant.value();
        if (v != 0)
            append_signed(out, v < 0, to_string(Rational(abs(v))));
    } else {
        append_constant(out, s.constant);
    }
    if (s.prefactor_exponent != 0 && !s.terms.empty()) {
        std::string inner;
        append_terms(inner, s, s.prefactor_exponent);
        append_signed(out, false, q_power(s.prefactor_exponent) + "*(" + inner + ")");
    } else {
        append_terms(out, s, Rational(0));
    }
    return out.empty() ? "0" : out;
}

namespace {

class Parser {
public:
    Parser(std::string text, QSeries& target) : s_(std::move(text)), out_(target) {}

    void parse()
    {
        if (s_ == "0")
            return;
        parse_sum(Rational(0), false);
        if (pos_ != s_.size())
            fail("trailing input");
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    QSeries& out_;

    [[noreturn]] void fail(const std::string& why)
    {
        throw Error(ErrorKind::parse, "series parse error at offset " + std::to_string(pos_) + ": " + why);
    }

    bool eat(std::string_view tok)
    {
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    BigInt integer()
    {
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-')
            ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == start || (pos_ == start + 1 && s_[start] == '-'))
            fail("expected integer");
        return BigInt(s_.substr(start, pos_ - start));
    }

    Rational rational()
    {
        BigInt p = integer();
        if (eat("/")) {
            BigInt q = integer();
            if (q == 0)
                fail("zero denominator");
            return make_rational(p, q);
        }
        return Rational(p);
    }

    // exponent after 'q': "", "^k", "^(r)"
    Rational exponent()
    {
        if (!eat("^"))
            return Rational(1);
        if (eat("(")) {
            Rational r = rational();
            if (!eat(")"))
                fail("expected ')'");
            return r;
        }
        return Rational(integer());
    }

    void parse_sum(const Rational& shift, bool inner)
    {
        bool first = true;
        while (pos_ < s_.size()) {
            if (inner && s_[pos_] == ')')
                break;
            bool negative = false;
            if (eat("-"))
                negative = true;
            else if (!first && !eat("+"))
                fail("expected '+' or '-'");
            first = false;
            parse_atom(negative, shift, inner);
        }
    }

    void parse_atom(bool negative, const Rational& shift, bool inner)
    {
        if (!inner && s_.compare(pos_, 2, "q^") == 0) {
            // prefactor group q^(r)*( ... ) or a plain power
            std::size_t save = pos_;
            ++pos_;
            Rational e = exponent();
            if (eat("*(")) {
                if (negative)
                    fail("negated prefactor group");
                parse_sum(e, true);
                if (!eat(")"))
                    fail("expected ')' closing the prefactor group");
                out_.prefactor_exponent = e;
                return;
            }
            pos_ = save;
        }
        Rational coef(1);
        bool has_coef = false;
        if (eat("(")) {
            coef = rational();
            if (!eat(")"))
                fail("expected ')'");
            has_coef = true;
        } else if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            coef = rational();
            has_coef = true;
        }
        if (negative)
            coef = -coef;
        if (eat("zeta(")) {
            int s = static_cast<int>(to_int64(integer()));
            Rational x(1);
            if (eat(","))
                x = rational();
            if (!eat(")"))
                fail("expected ')' after zeta arguments");
            out_.constant.add(coef, s, x);
            return;
        }
        if (eat("q")) {
            Rational e = exponent() + shift;
            if (!is_integer(coef))
                fail("non-integer series coefficient");
            out_.insert(e, num(coef));
            return;
        }
        if (!has_coef)
            fail("expected a term");
        if (inner || shift != 0) {
            if (!is_integer(coef))
                fail("non-integer series coefficient");
            out_.insert(shift, num(coef));
        } else {
            out_.constant.add_rational(coef);
        }
    }
};

} // namespace

QSeries parse_series(std::string_view text, const Rational& truncation, const BigInt& conductor)
{
    // whitespace may only sit next to an operator or parenthesis
    auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
    auto is_glue = [](char ch) { return std::string_view("+-*()").find(ch) != std::string_view::npos; };
    std::string compact;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_space(text[i])) {
            compact += text[i];
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_space(text[j]))
            ++j;
        if (!compact.empty() && j < text.size() && !is_glue(compact.back()) && !is_glue(text[j]))
            throw Error(ErrorKind::parse, "series parse error at offset " + std::to_string(i) + ": stray whitespace");
        i = j - 1;
    }
    QSeries out(truncation, conductor);
    Parser(compact, out).parse();
    return out;
}

std::optional<Rational> first_difference(const QSeries& a, const QSeries& b, const Rational& order)
{
    std::vector<Rational> keys;
    for (const auto* s : {&a, &b})
        for (const auto& [e, c] : s->terms)
            if (e <= order)
                keys.push_back(e);
    std::sort(keys.begin(), keys.end());
    for (const auto& e : keys)
        if (a.coefficient(e) != b.coefficient(e))
            return e;
    if (!(a.constant == b.constant))
        return Rational(0);
    return std::nullopt;
}

} // namespace zhat
