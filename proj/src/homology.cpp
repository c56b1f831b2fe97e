#include "zhat/homology.hpp"

#include <algorithm>

namespace zhat {

MatrixQ exact_inverse(const MatrixZ& B)
{
    const Eigen::Index n = B.rows();
    if (n != B.cols())
        throw Error(ErrorKind::domain, "inverse of a non-square matrix");
    MatrixQ a = cast_matrix<Rational>(B);
    MatrixQ inv = MatrixQ::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            throw Error(ErrorKind::singular_matrix, "matrix is singular");
        if (p != c) {
            a.row(c).swap(a.row(p));
            inv.row(c).swap(inv.row(p));
        }
        Rational piv = a(c, c);
        for (Eigen::Index j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0)
                continue;
            Rational f = a(r, c);
            for (Eigen::Index j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

MatrixZ adjugate(const MatrixZ& B)
{
    BigInt det = determinant(B);
    MatrixQ inv = exact_inverse(B);
    MatrixZ adj(B.rows(), B.cols());
    for (Eigen::Index i = 0; i < B.rows(); ++i)
        for (Eigen::Index j = 0; j < B.cols(); ++j) {
            Rational v = inv(i, j) * Rational(det);
            adj(i, j) = num(v);
        }
    return adj;
}

bool is_positive_definite(const MatrixZ& B)
{
    for (Eigen::Index k = 1; k <= B.rows(); ++k)
        if (determinant<BigInt>(B.topLeftCorner(k, k)) <= 0)
            return false;
    return true;
}

Inertia inertia(const MatrixQ& M)
{
    MatrixQ a = M;
    const Eigen::Index n = a.rows();
    Inertia out;
    Eigen::Index k = 0;
    while (k < n) {
        // bring a nonzero diagonal entry to (k,k)
        Eigen::Index p = k;
        while (p < n && a(p, p) == 0)
            ++p;
        if (p == n) {
            // all remaining diagonal zero: find an off-diagonal entry
            Eigen::Index pi = -1, pj = -1;
            for (Eigen::Index i = k; i < n && pi < 0; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j)
                    if (a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) {
                out.zero += static_cast<int>(n - k);
                return out;
            }
            // row_i += row_j, col_i += col_j makes a(i,i) = 2 a(i,j)
            a.row(pi) += a.row(pj);
            a.col(pi) += a.col(pj);
            p = pi;
        }
        if (p != k) {
            a.row(k).swap(a.row(p));
            a.col(k).swap(a.col(p));
        }
        Rational piv = a(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (a(i, k) == 0)
                continue;
            Rational f = a(i, k) / piv;
            for (Eigen::Index j = 0; j < n; ++j)
                a(i, j) -= f * a(k, j);
            for (Eigen::Index j = 0; j < n; ++j)
                a(j, i) -= f * a(j, k);
        }
        if (piv > 0)
            ++out.positive;
        else
            ++out.negative;
        ++k;
    }
    return out;
}

namespace {

void swap_rows(MatrixZ& m, Eigen::Index a, Eigen::Index b)
{
    if (a != b)
        m.row(a).swap(m.row(b));
}

void swap_cols(MatrixZ& m, Eigen::Index a, Eigen::Index b)
{
    if (a != b)
        m.col(a).swap(m.col(b));
}

// row_dst -= q * row_src
void row_axpy(MatrixZ& m, Eigen::Index dst, Eigen::Index src, const BigInt& q)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        m(dst, j) -= q * m(src, j);
}

void col_axpy(MatrixZ& m, Eigen::Index dst, Eigen::Index src, const BigInt& q)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        m(i, dst) -= q * m(i, src);
}

BigInt babs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

} // namespace

SmithDecomposition smith_normal_form(const MatrixZ& B)
{
    const Eigen::Index n = B.rows(), m = B.cols();
    MatrixZ D = B;
    MatrixZ U = MatrixZ::Identity(n, n);
    MatrixZ V = MatrixZ::Identity(m, m);
    MatrixZ Uinv = MatrixZ::Identity(n, n);

    const Eigen::Index r = std::min(n, m);
    for (Eigen::Index t = 0; t < r; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block goes to (t,t)
            Eigen::Index bi = -1, bj = -1;
            for (Eigen::Index i = t; i < n; ++i)
                for (Eigen::Index j = t; j < m; ++j)
                    if (D(i, j) != 0 && (bi < 0 || babs(D(i, j)) < babs(D(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0)
                break;
            swap_rows(D, t, bi);
            swap_rows(U, t, bi);
            swap_cols(Uinv, t, bi);
            swap_cols(D, t, bj);
            swap_cols(V, t, bj);

            bool dirty = false;
            for (Eigen::Index i = t + 1; i < n; ++i) {
                if (D(i, t) == 0)
                    continue;
                BigInt q = floor_div(D(i, t), D(t, t));
                row_axpy(D, i, t, q);
                row_axpy(U, i, t, q);
                // U <- E U with E = I - q e_i e_t^T, so U^{-1} <- U^{-1} E^{-1}
                col_axpy(Uinv, t, i, -q);
                if (D(i, t) != 0)
                    dirty = true;
            }
            for (Eigen::Index j = t + 1; j < m; ++j) {
                if (D(t, j) == 0)
                    continue;
                BigInt q = floor_div(D(t, j), D(t, t));
                col_axpy(D, j, t, q);
                col_axpy(V, j, t, q);
                if (D(t, j) != 0)
                    dirty = true;
            }
            if (dirty)
                continue;
            // divisibility of the trailing block
            Eigen::Index fi = -1;
            for (Eigen::Index i = t + 1; i < n && fi < 0; ++i)
                for (Eigen::Index j = t + 1; j < m; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        fi = i;
                        break;
                    }
            if (fi < 0)
                break;
            row_axpy(D, t, fi, BigInt(-1));
            row_axpy(U, t, fi, BigInt(-1));
            col_axpy(Uinv, fi, t, BigInt(1));
        }
        if (D(t, t) < 0) {
            D.row(t) = -D.row(t);
            U.row(t) = -U.row(t);
            Uinv.col(t) = -Uinv.col(t);
        }
    }
    // zero divisors (singular input) are left at the end by construction
    return SmithDecomposition{U, V, D, Uinv};
}

std::vector<BigInt> SmithDecomposition::divisors() const
{
    std::vector<BigInt> d;
    for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i)
        d.push_back(D(i, i));
    return d;
}

BigInt SmithDecomposition::order() const
{
    BigInt p(1);
    for (const auto& d : divisors())
        p *= d;
    return p;
}

std::vector<BigInt> class_index(const SmithDecomposition& snf, const VectorZ& x)
{
    VectorZ ux = mul(snf.U, x);
    std::vector<BigInt> idx;
    for (Eigen::Index i = 0; i < ux.size(); ++i) {
        const BigInt& d = snf.D(i, i);
        if (d == 1)
            continue;
        idx.push_back(pos_mod(ux(i), d));
    }
    return idx;
}

bool in_lattice(const MatrixZ& B, const VectorZ& x)
{
    MatrixQ inv = exact_inverse(B);
    VectorQ y = mul(inv, cast_matrix<Rational>(x));
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (!is_integer(y(i)))
            return false;
    return true;
}

std::vector<SpincLabel> coset_representatives(const SmithDecomposition& snf,
                                              std::optional<int> name_vertex)
{
    const auto divs = snf.divisors();
    for (const auto& d : divs)
        if (d == 0)
            throw Error(ErrorKind::positive_betti, "H_1 has a free part (b1 > 0)");
    const Eigen::Index n = snf.D.rows();
    const BigInt order = snf.order();

    if (name_vertex) {
        VectorZ e = VectorZ::Zero(n);
        e(*name_vertex) = 1;
        // order of the class of e_v
        std::vector<SpincLabel> out;
        std::vector<std::vector<BigInt>> seen;
        VectorZ x = VectorZ::Zero(n);
        for (BigInt k = 0; k < order; ++k) {
            auto idx = class_index(snf, x);
            if (k > 0 && std::find(seen.begin(), seen.end(), idx) != seen.end())
                break;
            seen.push_back(idx);
            out.push_back(SpincLabel{x, idx, k.str()});
            x += e;
        }
        if (BigInt(out.size()) == order)
            return out;
    }

    std::vector<SpincLabel> out;
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < n; ++i)
        if (divs[i] != 1)
            active.push_back(i);
    std::vector<BigInt> t(active.size(), BigInt(0));
    for (;;) {
        VectorZ tv = VectorZ::Zero(n);
        std::string name = "(";
        for (std::size_t k = 0; k < active.size(); ++k) {
            tv(active[k]) = t[k];
            name += (k ? "," : "") + t[k].str();
        }
        name += ")";
        VectorZ rep = mul(snf.U_inverse, tv);
        out.push_back(SpincLabel{rep, t, active.empty() ? std::string("0") : name});
        bool carry = true;
        std::size_t k = active.size();
        while (carry && k > 0) {
            --k;
            t[k] += 1;
            if (t[k] < divs[active[k]])
                carry = false;
            else
                t[k] = 0;
        }
        if (carry)
            break;
    }
    return out;
}

} // namespace zhat
