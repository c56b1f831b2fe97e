#include "zhat/chamber.hpp"
#include "zhat/error.hpp"

#include <algorithm>

namespace zhat {

int Chamber::sign_at(int index) const
{
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k] == index)
            return alpha[k];
    return 0;
}

Chamber Chamber::negated() const
{
    Chamber c = *this;
    for (auto& a : c.alpha)
        a = -a;
    return c;
}

std::string Chamber::to_string() const
{
    std::string s = "(";
    for (std::size_t k = 0; k < alpha.size(); ++k)
        s += (k ? "," : "") + std::to_string(alpha[k]);
    return s + ")";
}

namespace {

// Solve [X_S 1; 1^T 0] (v, -lambda) = (0, 1). False when singular.
bool face_kkt(const MatrixQ& X, const std::vector<int>& S, VectorQ& v, Rational& lambda)
{
    const auto k = static_cast<Eigen::Index>(S.size());
    MatrixQ A(k + 1, k + 2);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j)
            A(i, j) = X(S[i], S[j]);
        A(i, k) = Rational(-1);
        A(i, k + 1) = Rational(0);
    }
    for (Eigen::Index j = 0; j < k; ++j)
        A(k, j) = Rational(1);
    A(k, k) = Rational(0);
    A(k, k + 1) = Rational(1);

    const Eigen::Index n = k + 1;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (p < n && A(p, c) == 0)
            ++p;
        if (p == n)
            return false;
        if (p != c)
            A.row(c).swap(A.row(p));
        Rational piv = A(c, c);
        for (Eigen::Index j = c; j <= n; ++j)
            A(c, j) /= piv;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || A(r, c) == 0)
                continue;
            Rational f = A(r, c);
            for (Eigen::Index j = c; j <= n; ++j)
                A(r, j) -= f * A(c, j);
        }
    }
    v.resize(k);
    for (Eigen::Index i = 0; i < k; ++i)
        v(i) = A(i, n);
    lambda = A(k, n);
    return true;
}

} // namespace

bool is_copositive(const MatrixQ& X)
{
    const auto k = X.rows();
    if (k != X.cols())
        throw Error(ErrorKind::domain, "copositivity of a non-square matrix");
    for (Eigen::Index i = 0; i < k; ++i)
        if (X(i, i) < 0)
            return false;
    if (k <= 1)
        return true;
    if (k == 2)
        return X(0, 1) >= 0 || X(0, 0) * X(1, 1) - X(0, 1) * X(1, 0) >= 0;
    if (k > kCopositiveMaxDimension)
        throw Error(ErrorKind::unsupported,
                    "copositivity undecided: dimension " + std::to_string(k) + " exceeds the face-enumeration limit");

    // The simplex minimum is attained at a point whose face system is
    // nonsingular; check the sign of every such candidate.
    for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
        std::vector<int> S;
        for (Eigen::Index i = 0; i < k; ++i)
            if (mask & (1ul << i))
                S.push_back(static_cast<int>(i));
        VectorQ v;
        Rational lambda;
        if (!face_kkt(X, S, v, lambda))
            continue;
        bool interior = true;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v(i) <= 0)
                interior = false;
        if (interior && lambda < 0)
            return false;
    }
    return true;
}

MatrixQ chamber_form(const MatrixQ& Binv, const Chamber& c, const std::vector<int>& subset)
{
    const auto k = static_cast<Eigen::Index>(subset.size());
    MatrixQ X(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            X(i, j) = Binv(subset[i], subset[j]) * c.sign_at(subset[i]) * c.sign_at(subset[j]);
    return X;
}

bool is_good_chamber(const MatrixQ& Binv, const std::vector<int>& degrees, const Chamber& c)
{
    const auto L = static_cast<int>(degrees.size());
    std::vector<int> high;
    for (int I = 0; I < L; ++I) {
        if (degrees[I] == 2)
            continue;
        if (c.sign_at(I) == 0)
            return false;
        if (degrees[I] > 2)
            high.push_back(I);
    }
    for (int I = 0; I < L; ++I) {
        if (degrees[I] != 1)
            continue;
        for (int J = 0; J < L; ++J) {
            if (degrees[J] == 2 || J == I)
                continue;
            Rational x = Binv(I, J) * c.sign_at(I) * c.sign_at(J);
            if (x < 0)
                return false;
            if (degrees[J] == 1 && x == 0)
                return false;
        }
    }
    return is_copositive(chamber_form(Binv, c, high));
}

std::vector<Chamber> find_good_chambers(const MatrixZ& B, const MatrixQ& Binv,
                                        const std::vector<int>& degrees)
{
    if (B.rows() != static_cast<Eigen::Index>(degrees.size()))
        throw Error(ErrorKind::domain, "degree vector does not match the matrix");
    Chamber base;
    for (std::size_t I = 0; I < degrees.size(); ++I)
        if (degrees[I] != 2)
            base.vertices.push_back(static_cast<int>(I));
    const std::size_t k = base.vertices.size();
    if (k >= 8 * sizeof(unsigned long) - 1)
        throw Error(ErrorKind::unsupported, "too many vertices of degree != 2 for exhaustive chamber search");
    std::vector<Chamber> out;
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        Chamber c = base;
        c.alpha.resize(k);
        for (std::size_t i = 0; i < k; ++i)
            c.alpha[i] = (mask >> (k - 1 - i)) & 1ul ? -1 : 1;
        if (is_good_chamber(Binv, degrees, c))
            out.push_back(c);
    }
    // lexicographically descending: (1,...) before (-1,...)
    std::sort(out.begin(), out.end(),
              [](const Chamber& a, const Chamber& b) { return a.alpha > b.alpha; });
    return out;
}

std::string describe_chambers(const std::vector<Chamber>& chambers)
{
    if (chambers.empty())
        return "none";
    if (chambers.size() == 2 && chambers[1] == chambers[0].negated())
        return "+-" + chambers[0].to_string();
    std::string s;
    for (std::size_t i = 0; i < chambers.size(); ++i)
        s += (i ? ", " : "") + chambers[i].to_string();
    return s;
}

} // namespace zhat
