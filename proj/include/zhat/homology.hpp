#ifndef ZHAT_HOMOLOGY_HPP
#define ZHAT_HOMOLOGY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhat/error.hpp"
#include "zhat/numeric.hpp"

namespace zhat {

// Fraction-free Gaussian elimination (Bareiss). Exact for integral Scalar.
template <typename Scalar>
Scalar determinant(Mat<Scalar> m)
{
    const Eigen::Index n = m.rows();
    if (n != m.cols())
        throw Error(ErrorKind::domain, "determinant of a non-square matrix");
    if (n == 0)
        return Scalar(1);
    Scalar sign(1), prev(1);
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            Eigen::Index p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return Scalar(0);
            m.row(k).swap(m.row(p));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

MatrixQ exact_inverse(const MatrixZ& B);

// det(B) * B^{-1}, an integer matrix
MatrixZ adjugate(const MatrixZ& B);

bool is_positive_definite(const MatrixZ& B);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    int signature() const { return positive - negative; }
};

// Sylvester inertia by exact congruence diagonalization.
Inertia inertia(const MatrixQ& M);

struct SmithDecomposition {
    MatrixZ U;
    MatrixZ V;
    MatrixZ D;
    MatrixZ U_inverse;

    std::vector<BigInt> divisors() const;
    // product of the divisors; zero when some divisor vanishes
    BigInt order() const;
};

SmithDecomposition smith_normal_form(const MatrixZ& B);

struct SpincLabel {
    VectorZ rep;
    std::vector<BigInt> index; // residues along the nontrivial divisors
    std::string name;
};

// Residues of x in the product of cyclic factors (trivial factors dropped).
std::vector<BigInt> class_index(const SmithDecomposition& snf, const VectorZ& x);

bool in_lattice(const MatrixZ& B, const VectorZ& x);

// One label per element of Z^L / B Z^L. When name_vertex is set and the unit
// vector at that coordinate generates the group, labels are k * e_v named "k";
// otherwise they are U^{-1} t named by the residue tuple t.
std::vector<SpincLabel> coset_representatives(const SmithDecomposition& snf,
                                              std::optional<int> name_vertex = std::nullopt);

} // namespace zhat

#endif
