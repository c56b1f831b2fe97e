#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "support.hpp"
#include "zhat/chamber.hpp"

using namespace zhat;

namespace {

Eigen::MatrixXd to_double(const MatrixQ& X)
{
    Eigen::MatrixXd d(X.rows(), X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = 0; j < X.cols(); ++j)
            d(i, j) = X(i, j).convert_to<double>();
    return d;
}

// Hadeler's criterion for 3x3; nullopt when too close to the boundary to trust.
std::optional<bool> hadeler(const Eigen::Matrix3d& a)
{
    constexpr double tol = 1e-9;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(a(i, i)) < tol)
            return std::nullopt;
        if (a(i, i) < 0)
            return false;
    }
    auto bar = [&](int i, int j) { return a(i, j) + std::sqrt(a(i, i) * a(j, j)); };
    const double b01 = bar(0, 1), b02 = bar(0, 2), b12 = bar(1, 2);
    for (double b : {b01, b02, b12}) {
        if (std::abs(b) < tol)
            return std::nullopt;
        if (b < 0)
            return false;
    }
    const double t = std::sqrt(a(0, 0) * a(1, 1) * a(2, 2)) + a(0, 1) * std::sqrt(a(2, 2)) +
                     a(0, 2) * std::sqrt(a(1, 1)) + a(1, 2) * std::sqrt(a(0, 0)) + std::sqrt(2 * b01 * b02 * b12);
    if (std::abs(t) < tol)
        return std::nullopt;
    return t > 0;
}

// Smallest v^T X v over simplex points with denominator `den`.
double grid_minimum(const Eigen::MatrixXd& X, int den)
{
    const auto k = X.rows();
    Eigen::VectorXi c = Eigen::VectorXi::Zero(k);
    double best = 1e300;
    std::function<void(Eigen::Index, int)> rec = [&](Eigen::Index i, int left) {
        if (i == k - 1) {
            c(i) = left;
            Eigen::VectorXd v = c.cast<double>() / den;
            best = std::min(best, v.dot(X * v));
            return;
        }
        for (int t = 0; t <= left; ++t) {
            c(i) = t;
            rec(i + 1, left - t);
        }
    };
    rec(0, den);
    return best;
}

MatrixQ random_symmetric(std::mt19937_64& rng, int k)
{
    std::uniform_int_distribution<int> d(-6, 6);
    MatrixQ X(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            X(i, j) = X(j, i) = Rational(d(rng), 1 + std::abs(d(rng)) % 3);
    return X;
}

} // namespace

TEST_CASE("copositivity in dimension 2 against the closed form")
{
    CHECK(is_copositive(testing::qmatrix({{1, -1}, {-1, 2}})));
    CHECK_FALSE(is_copositive(testing::qmatrix({{1, -2}, {-2, 1}})));
    CHECK(is_copositive(testing::qmatrix({{1, -1}, {-1, 1}})));
    CHECK_FALSE(is_copositive(testing::qmatrix({{-1, 5}, {5, 3}})));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 300; ++t) {
        MatrixQ X = random_symmetric(rng, 2);
        auto d = to_double(X);
        const bool expect = d(0, 0) >= 0 && d(1, 1) >= 0 && d(0, 1) >= -std::sqrt(d(0, 0) * d(1, 1)) - 1e-12;
        CHECK(is_copositive(X) == expect);
    }
}

TEST_CASE("copositivity in dimension 3 against Hadeler's criterion")
{
    std::mt19937_64 rng(2);
    int decided = 0, positive = 0;
    for (int t = 0; t < 1500; ++t) {
        MatrixQ X = random_symmetric(rng, 3);
        auto h = hadeler(to_double(X));
        if (!h)
            continue;
        ++decided;
        positive += *h;
        CHECK(is_copositive(X) == *h);
    }
    CHECK(decided > 1000);
    CHECK(positive > 50);
}

TEST_CASE("copositivity in dimensions 4 and 5 against a simplex grid")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 150; ++t) {
        const int k = 4 + t % 2;
        MatrixQ X = random_symmetric(rng, k);
        // bias towards the interesting region
        for (int i = 0; i < k; ++i)
            X(i, i) = abs(X(i, i)) + Rational(t % 4);
        const double m = grid_minimum(to_double(X), 12);
        if (m < -1e-12)
            CHECK_FALSE(is_copositive(X));
        if (is_copositive(X))
            CHECK(m >= -1e-12);
    }
    // minimum only in the interior of a face
    MatrixQ Y = testing::qmatrix({{1, -2, 1, 1}, {-2, 1, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 1}});
    CHECK_FALSE(is_copositive(Y));
    CHECK(is_copositive(testing::qmatrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})));
}

TEST_CASE("chambers of the example manifolds")
{
    for (const char* name : {"s3", "sigma237", "det2", "det3"}) {
        auto g = testing::graph(name);
        MatrixZ B = adjacency(g);
        auto ch = find_good_chambers(B, exact_inverse(B), g.degrees());
        CHECK(describe_chambers(ch) == "+-(1,-1,-1,-1)");
    }
}

TEST_CASE("good chambers agree with a direct check of the definition")
{
    // leaves see the other non-degree-2 vertices with a nonnegative form,
    // strictly so between leaves; the high-degree block is copositive
    for (const char* name : {"fig1_3", "fig2_6", "fig2_9", "fig3_11", "fig4_4"}) {
        auto g = testing::graph(name);
        MatrixZ B = adjacency(g);
        MatrixQ Binv = exact_inverse(B);
        auto deg = g.degrees();
        auto found = find_good_chambers(B, Binv, deg);
        std::vector<int> nd2, high;
        for (int I = 0; I < static_cast<int>(deg.size()); ++I) {
            if (deg[I] != 2)
                nd2.push_back(I);
            if (deg[I] > 2)
                high.push_back(I);
        }
        std::vector<Chamber> expect;
        for (unsigned mask = 0; mask < (1u << nd2.size()); ++mask) {
            Chamber c{nd2, std::vector<int>(nd2.size(), 1)};
            for (std::size_t i = 0; i < nd2.size(); ++i)
                if (mask & (1u << i))
                    c.alpha[i] = -1;
            bool good = true;
            for (int I : nd2)
                for (int J : nd2) {
                    if (deg[I] != 1 || I == J)
                        continue;
                    Rational x = Binv(I, J) * c.sign_at(I) * c.sign_at(J);
                    good = good && x >= 0 && (deg[J] != 1 || x != 0);
                }
            Eigen::MatrixXd X(high.size(), high.size());
            for (std::size_t i = 0; i < high.size(); ++i)
                for (std::size_t j = 0; j < high.size(); ++j)
                    X(i, j) = (Binv(high[i], high[j]) * c.sign_at(high[i]) * c.sign_at(high[j])).convert_to<double>();
            good = good && grid_minimum(X, 24) >= -1e-12;
            if (good)
                expect.push_back(c);
        }
        CHECK(found.size() == expect.size());
        for (const auto& c : expect)
            CHECK(std::find(found.begin(), found.end(), c) != found.end());
        // negation maps good chambers to good chambers
        for (const auto& c : found)
            CHECK(is_good_chamber(Binv, deg, c.negated()));
    }
}

TEST_CASE("the drawn fourth S^3 graph has no good chamber")
{
    auto g = testing::graph("fig1_4");
    MatrixZ B = adjacency(g);
    CHECK(abs(determinant(B)) == 1);
    CHECK(find_good_chambers(B, exact_inverse(B), g.degrees()).empty());
    CHECK(describe_chambers({}) == "none");
}
