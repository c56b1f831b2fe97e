#ifndef ZHAT_NUMERIC_HPP
#define ZHAT_NUMERIC_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace zhat {

namespace mp = boost::multiprecision;

// Expression templates are off: Eigen and boost's templates do not mix well.
using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixZ = Mat<BigInt>;
using MatrixQ = Mat<Rational>;
using VectorZ = Vec<BigInt>;
using VectorQ = Vec<Rational>;
using MatrixL = Mat<std::int64_t>;
using VectorL = Vec<std::int64_t>;

// Products of multiprecision matrices. Plain operator* trips an overload bug
// in boost 1.74's byte-container trait, lazyProduct does not.
template <typename A, typename B>
auto mul(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    using S = typename A::Scalar;
    Mat<S> out = a.derived().lazyProduct(b.derived());
    return out;
}

// Same trait bug hits operator==.
template <typename A, typename B>
bool equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j))
                return false;
    return true;
}

template <typename Scalar, typename From>
Mat<Scalar> cast_matrix(const Eigen::MatrixBase<From>& m)
{
    Mat<Scalar> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = Scalar(m(i, j));
    return out;
}

// boost 1.74 rational_adaptor throws on a negative denominator
inline Rational make_rational(const BigInt& p, const BigInt& q = BigInt(1))
{
    return q < 0 ? Rational(BigInt(-p), BigInt(-q)) : Rational(p, q);
}

inline BigInt num(const Rational& r) { return BigInt(mp::numerator(r)); }
inline BigInt den(const Rational& r) { return BigInt(mp::denominator(r)); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

// floor and mathematical (nonnegative) modulus
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt pos_mod(const BigInt& a, const BigInt& b);
std::int64_t pos_mod(std::int64_t a, std::int64_t b);
Rational floor(const Rational& r);
Rational frac(const Rational& r);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

std::int64_t to_int64(const BigInt& v);

// "p", "-p/q"
std::string to_string(const Rational& r);
std::string to_string(const BigInt& v);
Rational parse_rational(std::string_view text);

} // namespace zhat

#endif
