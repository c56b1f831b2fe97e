#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "support.hpp"
#include "zhat/cgp.hpp"
#include "zhat/error.hpp"
#include "zhat/io.hpp"

using namespace zhat;
using namespace zhat::cgp;

namespace {

constexpr double kTol = 1e-9;

Complex random_complex(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-3, 3);
    return {d(rng), d(rng) * 0.3};
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::domain;
}

CGPColor chain_color()
{
    return {{Rational(3, 5), Rational(4, 5)}, {Rational(4, 5), Rational(2, 5)}};
}

PlumbingGraph chain23() { return parse_graph(R"({"vertices":[{"id":0,"weight":2},{"id":1,"weight":3}],"edges":[[0,1]]})"); }

} // namespace

TEST_CASE("level checks and pivot")
{
    CHECK(kind_of([] { PivotalData p(4); }) == ErrorKind::domain);
    CHECK(kind_of([] { PivotalData p(1); }) == ErrorKind::domain);
    PivotalData p(5);
    CHECK(std::abs(p.xi() - std::polar(1.0, 2 * std::numbers::pi / 5)) < kTol);
    CHECK(p.pivot()(0) == -2);
    CHECK(p.pivot()(1) == -8);
    CHECK(RootDatum::form(RootDatum::even_root(), RootDatum::even_root()) == -4);
    for (const auto& r : RootDatum::odd_roots())
        CHECK(RootDatum::form(r, r) == 0);
}

TEST_CASE("quantum brackets")
{
    CHECK(std::abs(bracket(1.0, 5) - Complex(0, 2 * std::sin(2 * std::numbers::pi / 5))) < kTol);
    CHECK(std::abs(bracket(1.0, 5).imag() - 1.902113) < 1e-6);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        Complex x = random_complex(rng);
        for (int l : {3, 5, 7}) {
            CHECK(std::abs(bracket(x + double(l), l) - bracket(x, l)) < kTol);
            CHECK(std::abs(bracket(-x, l) + bracket(x, l)) < kTol);
        }
    }
}

TEST_CASE("twist in weight and alpha coordinates")
{
    std::mt19937_64 rng(5);
    for (int l : {3, 5, 7})
        for (int t = 0; t < 40; ++t) {
            Complex mu1 = random_complex(rng), mu2 = random_complex(rng);
            auto a = AlphaCoords::from_weights(mu1, mu2, l);
            CHECK(std::abs(twist(a, l) - twist_from_weights(mu1, mu2, l)) < 1e-8 * std::abs(twist(a, l)));
            auto [m1, m2] = a.to_weights(l);
            CHECK(std::abs(m1 - mu1) < kTol);
            CHECK(std::abs(m2 - mu2) < kTol);
        }
}

TEST_CASE("d(a') S(a, a') is symmetric")
{
    std::mt19937_64 rng(6);
    for (int l : {3, 5, 7})
        for (int t = 0; t < 40; ++t) {
            AlphaCoords a{random_complex(rng), random_complex(rng)};
            AlphaCoords b{random_complex(rng), random_complex(rng)};
            Complex lhs = modified_dimension(b, l) * s_matrix(a, b, l);
            Complex rhs = modified_dimension(a, l) * s_matrix(b, a, l);
            CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
            Complex phase = xi_pow(2.0 * a.a1 * b.a1 + a.a1 * b.a2 + a.a2 * b.a1, l);
            CHECK(std::abs(lhs - phase) < 1e-8 * std::max(1.0, std::abs(phase)));
        }
}

TEST_CASE("atypical weights are rejected")
{
    AlphaCoords zero1{0.0, 0.7};
    CHECK(kind_of([&] { modified_dimension(zero1, 5); }) == ErrorKind::atypical);
    AlphaCoords zero2{0.3, 0.0};
    CHECK(kind_of([&] { s_matrix(zero1, zero2, 5); }) == ErrorKind::atypical);
    CHECK(kind_of([&] { modified_dimension({0.3, -0.3}, 5); }) == ErrorKind::atypical);
}

TEST_CASE("closed colors")
{
    std::mt19937_64 rng(7);
    for (const char* name : {"s3", "det2", "det3", "fig2_9"}) {
        MatrixZ B = adjacency(testing::graph(name));
        for (int t = 0; t < 5; ++t)
            CHECK(is_closed(B, sample_closed_color(B, rng)));
    }
    MatrixZ B = adjacency(chain23());
    CHECK(is_closed(B, chain_color()));
    CGPColor bad = chain_color();
    bad.mu1[0] = Rational(1, 5);
    CHECK_FALSE(is_closed(B, bad));
    CHECK(kind_of([&] { state_sum(chain23(), bad, 3); }) == ErrorKind::closure);
}

TEST_CASE("colors on integral homology spheres are integral, hence atypical")
{
    std::mt19937_64 rng(8);
    for (const char* name : {"s3", "sigma237"}) {
        auto g = testing::graph(name);
        CGPColor c = sample_closed_color(adjacency(g), rng);
        for (const auto& m : c.mu1)
            CHECK(is_integer(m));
        CHECK_FALSE(is_typical(g, c, 3));
        CHECK(kind_of([&] { state_sum(g, c, 3); }) == ErrorKind::atypical);
    }
}

TEST_CASE("state sum on a typical color")
{
    auto g = chain23();
    CGPColor c = chain_color();
    REQUIRE(is_typical(g, c, 3));
    StateSum s0 = state_sum(g, c, 3, 0), s1 = state_sum(g, c, 3, 1);
    CHECK(std::abs(s0.vertex_form - s0.exact_form) < 1e-9 * std::abs(s0.vertex_form));
    CHECK(std::abs(s0.vertex_form - s1.vertex_form) < 1e-9 * std::abs(s0.vertex_form));
    CHECK(std::abs(s0.exact_form - s1.exact_form) < 1e-9 * std::abs(s0.vertex_form));
    CHECK(std::abs(s0.vertex_form - Complex(6.87462, 7.93093)) < 1e-4);
    CHECK(kind_of([&] { state_sum(g, c, 3, 2); }) == ErrorKind::domain);
}

TEST_CASE("Gauss sums against a direct evaluation")
{
    // sum_r e(r^2 / 5) = sqrt(5)
    CHECK(std::abs(gauss_sum(testing::qmatrix({{1}}), VectorZ::Zero(1), 5) - std::sqrt(5.0)) < kTol);
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 3, l = 3 + 2 * (t % 3);
        MatrixQ M(n, n);
        VectorZ p(n);
        for (int i = 0; i < n; ++i) {
            p(i) = d(rng);
            for (int j = i; j < n; ++j)
                M(i, j) = M(j, i) = Rational(d(rng), i == j ? 1 : 2);
        }
        Complex direct = 0;
        std::vector<int> r(n, 0);
        for (;;) {
            double e = 0;
            for (int i = 0; i < n; ++i) {
                e += p(i).convert_to<double>() * r[i];
                for (int j = 0; j < n; ++j)
                    e += M(i, j).convert_to<double>() * r[i] * r[j];
            }
            direct += std::polar(1.0, 2 * std::numbers::pi * e / l);
            int k = n - 1;
            while (k >= 0 && ++r[k] == l)
                r[k--] = 0;
            if (k < 0)
                break;
        }
        CHECK(std::abs(gauss_sum(M, p, l) - direct) < 1e-8);
        // p only matters mod l
        VectorZ q = p;
        q(0) += l;
        CHECK(std::abs(gauss_sum(M, q, l) - direct) < 1e-8);
    }
}

TEST_CASE("Gauss reciprocity")
{
    CHECK(gauss_reciprocity_residual(testing::qmatrix({{1}}), VectorZ::Zero(1), 5) < 1e-10);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-5, 5);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + t % 3, l = 3 + 2 * (t % 3);
        MatrixQ M(n, n);
        VectorZ p(n);
        for (int i = 0; i < n; ++i) {
            p(i) = d(rng);
            for (int j = i; j < n; ++j)
                M(i, j) = M(j, i) = Rational(d(rng), i == j ? 1 : 2);
        }
        MatrixZ twice(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                twice(i, j) = num(M(i, j) * 2);
        if (determinant(twice) == 0)
            continue;
        ++checked;
        CHECK(gauss_reciprocity_residual(M, p, l) < 1e-8);
    }
    CHECK(checked > 40);
    CHECK(kind_of([] { gauss_reciprocity_residual(testing::qmatrix({{1, 1}, {1, 1}}), VectorZ::Zero(2), 3); }) ==
          ErrorKind::singular_matrix);
}
