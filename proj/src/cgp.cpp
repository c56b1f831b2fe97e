#include "zhat/cgp.hpp"
#include "zhat/error.hpp"
#include "zhat/homology.hpp"

#include <cmath>
#include <numbers>

namespace zhat::cgp {

namespace {

constexpr double kPoleTolerance = 1e-9;
constexpr Complex kI{0.0, 1.0};

double to_double(const Rational& r) { return r.convert_to<double>(); }

// Neumaier summation for complex values
class CompensatedSum {
public:
    void add(Complex v)
    {
        re_.add(v.real());
        im_.add(v.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    struct Part {
        double sum = 0, c = 0;
        void add(double x)
        {
            const double t = sum + x;
            if (std::abs(sum) >= std::abs(x))
                c += (sum - t) + x;
            else
                c += (x - t) + sum;
            sum = t;
        }
        double value() const { return sum + c; }
    };
    Part re_, im_;
};

void require_nonzero(Complex v, const char* what)
{
    if (std::abs(v) < kPoleTolerance)
        throw Error(ErrorKind::atypical, std::string("atypical color: ") + what + " vanishes");
}

void check_level(int l)
{
    if (l < 3 || l % 2 == 0)
        throw Error(ErrorKind::domain, "l must be odd and at least 3");
}

// odometer over [0, l)^n; returns false after the last tuple
bool next_tuple(std::vector<int>& t, int l)
{
    for (std::size_t k = t.size(); k-- > 0;) {
        if (++t[k] < l)
            return true;
        t[k] = 0;
    }
    return false;
}

} // namespace

PivotalData::PivotalData(int level) : l(level) { check_level(l); }

Complex PivotalData::xi() const { return std::polar(1.0, 2 * std::numbers::pi / l); }

Weight PivotalData::pivot() const
{
    // -2(eps - delta) - l(2 delta)
    return Weight(-2.0, 2.0 - 2.0 * l);
}

AlphaCoords AlphaCoords::from_weights(Complex mu1, Complex mu2, int l)
{
    return {mu1 - 2.0 + double(l), 2.0 * mu2 + 2.0 - 2.0 * l};
}

std::pair<Complex, Complex> AlphaCoords::to_weights(int l) const
{
    return {a1 + 2.0 - double(l), (a2 - 2.0 + 2.0 * l) / 2.0};
}

Complex xi_pow(Complex x, int l) { return std::exp(2.0 * std::numbers::pi * kI * x / double(l)); }

Complex bracket(Complex x, int l) { return xi_pow(x, l) - xi_pow(-x, l); }

Complex twist(const AlphaCoords& a, int l) { return xi_pow(a.a1 * a.a1 + a.a1 * a.a2, l); }

Complex twist_from_weights(Complex mu1, Complex mu2, int l)
{
    return xi_pow(2.0 * double(l) * mu2, l) * xi_pow(mu1 * mu1 + 2.0 * mu1 * mu2 - 4.0 * mu2 - 2.0 * mu1, l);
}

Complex s_matrix(const AlphaCoords& a, const AlphaCoords& ap, int l)
{
    const Complex den = bracket(ap.a2, l);
    require_nonzero(den, "{a'_2}");
    const Complex phase = xi_pow(2.0 * a.a1 * ap.a1 + a.a1 * ap.a2 + a.a2 * ap.a1, l);
    return phase * bracket(double(l) * ap.a2, l) * bracket(ap.a1, l) * bracket(ap.a1 + ap.a2, l) / den;
}

Complex modified_dimension(const AlphaCoords& a, int l)
{
    const Complex d1 = bracket(double(l) * a.a2, l), d2 = bracket(a.a1, l), d3 = bracket(a.a1 + a.a2, l);
    require_nonzero(d1, "{l a_2}");
    require_nonzero(d2, "{a_1}");
    require_nonzero(d3, "{a_1 + a_2}");
    return bracket(a.a2, l) / (d1 * d2 * d3);
}

bool is_closed(const MatrixZ& B, const CGPColor& c)
{
    const auto L = static_cast<std::size_t>(B.rows());
    if (c.mu1.size() != L || c.mu2.size() != L)
        return false;
    for (std::size_t I = 0; I < L; ++I) {
        Rational s1(0), s2(0);
        for (std::size_t J = 0; J < L; ++J) {
            s1 += Rational(B(I, J)) * c.mu1[J];
            s2 += Rational(B(I, J)) * c.mu2[J];
        }
        if (!is_integer(s1) || !is_integer(s2))
            return false;
    }
    return true;
}

CGPColor sample_closed_color(const MatrixZ& B, std::mt19937_64& rng)
{
    const BigInt det = determinant(B);
    if (det == 0)
        throw Error(ErrorKind::positive_betti, "det B = 0");
    const MatrixQ inv = exact_inverse(B);
    const auto L = B.rows();
    const std::int64_t modulus = to_int64(abs(det));
    std::uniform_int_distribution<std::int64_t> dist(0, modulus - 1);
    CGPColor c;
    for (auto* mu : {&c.mu1, &c.mu2}) {
        VectorQ x(L);
        for (Eigen::Index i = 0; i < L; ++i)
            x(i) = Rational(dist(rng));
        for (Eigen::Index I = 0; I < L; ++I) {
            Rational v(0);
            for (Eigen::Index J = 0; J < L; ++J)
                v += inv(I, J) * x(J);
            mu->push_back(frac(v));
        }
    }
    return c;
}

namespace {

struct Setup {
    int L;
    MatrixZ B;
    std::vector<int> deg;
    std::vector<double> mu1, mu2;
};

Setup make_setup(const PlumbingGraph& g, const CGPColor& color, int l)
{
    check_level(l);
    validate(g);
    Setup s{static_cast<int>(g.size()), adjacency(g), g.degrees(), {}, {}};
    if (!is_closed(s.B, color))
        throw Error(ErrorKind::closure, "color is not closed: B mu is not integral");
    for (int I = 0; I < s.L; ++I) {
        s.mu1.push_back(to_double(color.mu1[I]));
        s.mu2.push_back(to_double(color.mu2[I]));
    }
    return s;
}

// F factor of one vertex at (y, z)
Complex vertex_f(Complex y, Complex z, int deg)
{
    const int e = 2 - deg;
    if (e == 0)
        return 1.0;
    Complex base_num = y - z, base_den = (1.0 - y) * (1.0 - z);
    if (e < 0)
        std::swap(base_num, base_den);
    require_nonzero(base_den, e > 0 ? "(1 - y)(1 - z)" : "y - z");
    return std::pow(base_num / base_den, std::abs(e));
}

} // namespace

bool is_typical(const PlumbingGraph& g, const CGPColor& color, int l)
{
    Setup s = make_setup(g, color, l);
    try {
        for (int I = 0; I < s.L; ++I)
            for (int a = 0; a < l; ++a)
                for (int b = 0; b < l; ++b) {
                    auto al = AlphaCoords::from_weights(s.mu1[I] + a, s.mu2[I], l);
                    al.a2 += double(b);
                    modified_dimension(al, l);
                    require_nonzero(bracket(al.a2, l), "{a'_2}");
                    const double u = s.mu1[I] + 2 * s.mu2[I] + a, w = s.mu1[I] + b;
                    vertex_f(xi_pow(2 * u, l), xi_pow(2 * w, l), s.deg[I]);
                }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::atypical)
            return false;
        throw;
    }
    return true;
}

double StateSum::relative_difference() const
{
    const double scale = std::max(std::abs(vertex_form), std::abs(literal_form));
    return scale == 0 ? 0.0 : std::abs(vertex_form - literal_form) / scale;
}

StateSum state_sum(const PlumbingGraph& g, const CGPColor& color, int l, int i0)
{
    Setup s = make_setup(g, color, l);
    const int L = s.L;
    if (i0 < 0 || i0 >= L)
        throw Error(ErrorKind::domain, "distinguished vertex out of range");

    // (parent, child) pairs rooted at i0
    std::vector<std::pair<int, int>> edges;
    {
        const auto nb = g.neighbors();
        std::vector<int> seen(L, 0), queue{i0};
        seen[i0] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (int c : nb[queue[h]])
                if (!seen[c]) {
                    seen[c] = 1;
                    edges.emplace_back(queue[h], c);
                    queue.push_back(c);
                }
    }

    // per-vertex tables indexed by s * l + t
    const int cells = l * l;
    std::vector<std::vector<AlphaCoords>> alpha(L, std::vector<AlphaCoords>(cells));
    std::vector<std::vector<Complex>> vfac(L, std::vector<Complex>(cells));
    for (int I = 0; I < L; ++I)
        for (int st = 0; st < cells; ++st) {
            const int sv = st / l, tv = st % l;
            AlphaCoords a{s.mu1[I] - 2.0 + l + sv, 2 * s.mu2[I] + 2.0 - 2.0 * l + tv};
            alpha[I][st] = a;
            vfac[I][st] = modified_dimension(a, l) * std::pow(twist(a, l), double(s.B(I, I)));
            if (I == i0)
                vfac[I][st] *= modified_dimension(a, l);
        }
    std::vector<Eigen::MatrixXcd> efac;
    for (auto [p, c] : edges) {
        Eigen::MatrixXcd m(cells, cells);
        for (int x = 0; x < cells; ++x)
            for (int y = 0; y < cells; ++y)
                m(x, y) = s_matrix(alpha[c][x], alpha[p][y], l);
        efac.push_back(m);
    }

    StateSum out;
    {
        CompensatedSum acc;
        std::vector<int> st(L, 0);
        do {
            Complex v = 1.0;
            for (int I = 0; I < L; ++I)
                v *= vfac[I][st[I]];
            for (std::size_t e = 0; e < edges.size(); ++e)
                v *= efac[e](st[edges[e].second], st[edges[e].first]);
            acc.add(v);
        } while (next_tuple(st, cells));
        out.vertex_form = acc.value();
    }

    // a, b in (Z / l)^L
    CompensatedSum acc;
    std::vector<int> ab(2 * L, 0);
    std::vector<double> u(L), w(L);
    do {
        Complex F = 1.0;
        for (int I = 0; I < L; ++I) {
            u[I] = s.mu1[I] + 2 * s.mu2[I] + ab[I];
            w[I] = s.mu1[I] + ab[L + I];
            F *= vertex_f(xi_pow(2 * u[I], l), xi_pow(2 * w[I], l), s.deg[I]);
        }
        double q = 0;
        for (int I = 0; I < L; ++I)
            for (int J = 0; J < L; ++J)
                q += double(s.B(I, J)) * u[I] * w[J];
        acc.add(F * xi_pow(q, l));
    } while (next_tuple(ab, l));
    const Complex sum = acc.value();

    Complex literal = 1.0 / std::pow(double(l), L + 1);
    Complex exact = 1.0;
    const double tau = 2 * std::numbers::pi;
    for (int I = 0; I < L; ++I) {
        const Complex e1 = std::exp(kI * tau * s.mu1[I]) - std::exp(-kI * tau * s.mu1[I]);
        const Complex e2 = std::exp(2.0 * kI * tau * s.mu2[I]) - std::exp(-2.0 * kI * tau * s.mu2[I]);
        literal *= std::pow(e1, double(s.deg[I] - 2));
        exact *= std::pow(e2, double(s.deg[I] - 2)) * std::exp(2.0 * kI * tau * double(s.B(I, I)) * s.mu2[I]);
    }
    for (auto [p, c] : edges)
        for (auto [I, J] : {std::pair{p, c}, std::pair{c, p}})
            exact *= std::exp(kI * tau * (s.mu1[I] + 2 * s.mu2[I] - s.mu1[J]));
    out.literal_form = literal * sum;
    out.exact_form = exact * sum;
    return out;
}

namespace {

MatrixZ doubled(const MatrixQ& M)
{
    MatrixZ A(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            Rational v = 2 * M(i, j);
            if (!is_integer(v))
                throw Error(ErrorKind::domain, "2M must be integral");
            if (M(i, j) != M(j, i))
                throw Error(ErrorKind::domain, "M must be symmetric");
            A(i, j) = num(v);
        }
    return A;
}

} // namespace

Complex gauss_sum(const MatrixQ& M, const VectorZ& p, int l)
{
    const MatrixZ A = doubled(M);
    const auto n = A.rows();
    if (p.size() != n)
        throw Error(ErrorKind::domain, "p has the wrong length");
    CompensatedSum acc;
    std::vector<int> r(n, 0);
    do {
        // 2 (r^T M r + p^T r) mod 2l
        BigInt q(0);
        for (Eigen::Index i = 0; i < n; ++i) {
            q += 2 * p(i) * r[i];
            for (Eigen::Index j = 0; j < n; ++j)
                q += A(i, j) * r[i] * r[j];
        }
        const auto k = to_int64(pos_mod(q, BigInt(2 * l)));
        acc.add(std::polar(1.0, std::numbers::pi * double(k) / l));
    } while (next_tuple(r, l));
    return acc.value();
}

double gauss_reciprocity_residual(const MatrixQ& M, const VectorZ& p, int l)
{
    if (l < 1)
        throw Error(ErrorKind::domain, "l must be positive");
    const MatrixZ A = doubled(M);
    const auto n = A.rows();
    const BigInt detA = determinant(A);
    if (detA == 0)
        throw Error(ErrorKind::singular_matrix, "M is singular");
    const Complex lhs = gauss_sum(M, p, l);

    const MatrixQ Minv = [&] {
        MatrixQ inv = exact_inverse(A);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                inv(i, j) *= 2;
        return inv;
    }();
    const int sigma = inertia(M).signature();
    const double detM = std::abs(to_double(Rational(detA) / Rational(BigInt(1) << static_cast<unsigned>(n))));

    CompensatedSum acc;
    for (const auto& rep : coset_representatives(smith_normal_form(A), std::nullopt)) {
        // (l delta + p)^T M^-1 (l delta + p) / (2l) mod 2
        VectorQ v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = Rational(rep.rep(i) * l + p(i));
        Rational q(0);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                q += v(i) * Minv(i, j) * v(j);
        q /= Rational(2 * l);
        q -= 2 * floor(q / 2);
        acc.add(std::polar(1.0, -std::numbers::pi * to_double(q)));
    }
    const Complex rhs = std::polar(1.0, std::numbers::pi * sigma / 4.0) * std::pow(l / 2.0, n / 2.0) /
                        std::sqrt(detM) * acc.value();
    return std::abs(lhs - rhs);
}

} // namespace zhat::cgp
