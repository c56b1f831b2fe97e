#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>

#include "support.hpp"
#include "zhat/homology.hpp"

using namespace zhat;
using testing::matrix;

namespace {

// Leibniz expansion, independent of the elimination code
BigInt leibniz(const MatrixZ& m)
{
    const auto n = static_cast<int>(m.rows());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    BigInt total(0);
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                inv += p[i] > p[j];
        BigInt t(inv % 2 ? -1 : 1);
        for (int i = 0; i < n; ++i)
            t *= m(i, p[i]);
        total += t;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

MatrixZ random_matrix(std::mt19937_64& rng, int n, int lo, int hi, bool symmetric)
{
    std::uniform_int_distribution<int> d(lo, hi);
    MatrixZ m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = d(rng);
    if (symmetric)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                m(i, j) = m(j, i);
    return m;
}

bool is_unimodular(const MatrixZ& m)
{
    BigInt d = leibniz(m);
    return d == 1 || d == -1;
}

} // namespace

TEST_CASE("floor division and modulus")
{
    CHECK(floor_div(BigInt(-7), BigInt(2)) == -4);
    CHECK(pos_mod(BigInt(-7), BigInt(3)) == 2);
    CHECK(pos_mod(std::int64_t(-1), std::int64_t(5)) == 4);
    CHECK(floor(Rational(-1, 3)) == -1);
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(to_string(make_rational(5, -10)) == "-1/2");
    CHECK(parse_rational("3/-9") == Rational(-1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("determinant agrees with the Leibniz expansion")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        MatrixZ m = random_matrix(rng, 1 + trial % 5, -6, 6, false);
        CHECK(determinant(m) == leibniz(m));
    }
    CHECK(determinant(adjacency(testing::graph("s3"))) == 1);
    CHECK(determinant(adjacency(testing::graph("det2"))) == 2);
    CHECK(determinant(adjacency(testing::graph("det3"))) == 3);
}

TEST_CASE("exact inverse and adjugate")
{
    MatrixZ B = adjacency(testing::graph("det3"));
    MatrixQ inv = exact_inverse(B);
    MatrixQ prod = mul(cast_matrix<Rational>(B), inv);
    CHECK(equal(prod, MatrixQ::Identity(4, 4)));
    MatrixZ adj = adjugate(B);
    MatrixZ prodz = mul(B, adj);
    MatrixZ three = MatrixZ::Zero(4, 4);
    three.diagonal().setConstant(BigInt(3));
    CHECK(equal(prodz, three));
    CHECK_THROWS_AS(exact_inverse(matrix({{1, 2}, {2, 4}})), Error);
}

TEST_CASE("positive definiteness by leading minors")
{
    CHECK(is_positive_definite(adjacency(testing::graph("s3"))));
    CHECK(is_positive_definite(adjacency(testing::graph("sigma237"))));
    CHECK_FALSE(is_positive_definite(adjacency(testing::graph("fig1_5"))));
    CHECK_FALSE(is_positive_definite(matrix({{1, 2}, {2, 1}})));
}

TEST_CASE("inertia matches floating eigenvalues")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 1 + trial % 5;
        MatrixZ m = random_matrix(rng, n, -5, 5, true);
        if (trial % 7 == 0)
            m.row(0).setZero(), m.col(0).setZero();
        Eigen::MatrixXd md(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                md(i, j) = m(i, j).convert_to<double>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(md);
        int pos = 0, neg = 0;
        for (int i = 0; i < n; ++i) {
            const double ev = es.eigenvalues()(i);
            pos += ev > 1e-9;
            neg += ev < -1e-9;
        }
        Inertia in = inertia(cast_matrix<Rational>(m));
        CHECK(in.positive == pos);
        CHECK(in.negative == neg);
        CHECK(in.zero == n - pos - neg);
    }
}

TEST_CASE("Smith normal form: U B V = D with divisibility")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 4;
        MatrixZ B = random_matrix(rng, n, -9, 9, trial % 2 == 0);
        auto snf = smith_normal_form(B);
        MatrixZ UBV = mul(mul(snf.U, B), snf.V);
        CHECK(equal(UBV, snf.D));
        CHECK(is_unimodular(snf.U));
        CHECK(is_unimodular(snf.V));
        CHECK(equal(mul(snf.U, snf.U_inverse), MatrixZ::Identity(n, n)));
        auto d = snf.divisors();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            CHECK(d[i] >= 0);
            if (d[i] != 0)
                CHECK(d[i + 1] % d[i] == 0);
            else
                CHECK(d[i + 1] == 0);
        }
        // product of divisors is |det|
        BigInt det = leibniz(B);
        CHECK(snf.order() == (det < 0 ? BigInt(-det) : det));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (i != j)
                    CHECK(snf.D(i, j) == 0);
    }
}

TEST_CASE("Smith normal form examples")
{
    CHECK((smith_normal_form(matrix({{2, 0}, {0, 3}})).divisors() == std::vector<BigInt>{1, 6}));
    CHECK((smith_normal_form(matrix({{2, 4}, {6, 8}})).divisors() == std::vector<BigInt>{2, 4}));
    CHECK((smith_normal_form(adjacency(testing::graph("det3"))).divisors() == std::vector<BigInt>{1, 1, 1, 3}));
}

TEST_CASE("coset representatives are a transversal of Z^L / B Z^L")
{
    for (const char* name : {"s3", "det2", "det3", "fig4_3", "fig3_9"}) {
        MatrixZ B = adjacency(testing::graph(name));
        auto labels = coset_representatives(smith_normal_form(B), label_vertex(testing::graph(name)));
        CHECK(BigInt(labels.size()) == abs(determinant(B)));
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = i + 1; j < labels.size(); ++j)
                CHECK_FALSE(in_lattice(B, VectorZ(labels[i].rep - labels[j].rep)));
    }
    // names are multiples of the last leaf on the examples
    auto labels = coset_representatives(smith_normal_form(adjacency(testing::graph("det3"))), 3);
    REQUIRE((labels.size() == 3));
    CHECK((labels[1].name == "1"));
    CHECK(equal(labels[1].rep, (VectorZ(4) << 0, 0, 0, 1).finished()));
    CHECK(equal(labels[2].rep, (VectorZ(4) << 0, 0, 0, 2).finished()));
}

TEST_CASE("non-cyclic groups get tuple names; singular matrices are rejected")
{
    MatrixZ B = matrix({{2, 0}, {0, 2}});
    auto labels = coset_representatives(smith_normal_form(B), 0);
    CHECK(labels.size() == 4);
    CHECK(labels[0].name == "(0,0)");
    std::set<std::vector<BigInt>> seen;
    for (const auto& l : labels)
        seen.insert(class_index(smith_normal_form(B), l.rep));
    CHECK(seen.size() == 4);
    CHECK_THROWS_AS(coset_representatives(smith_normal_form(matrix({{1, 1}, {1, 1}})), std::nullopt), Error);
}
