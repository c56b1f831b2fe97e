#ifndef ZHAT_CGP_HPP
#define ZHAT_CGP_HPP

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "zhat/graph.hpp"
#include "zhat/numeric.hpp"

// Floating-point osp(2|2) data at an odd root of unity xi = exp(2 pi i / l).
namespace zhat::cgp {

using Complex = std::complex<double>;
using Weight = Eigen::Vector2d; // coefficients on (epsilon, delta)

// Rank-one osp(2|2) root data; form diag(1, -1) on (epsilon, delta).
struct RootDatum {
    static double form(const Weight& a, const Weight& b) { return a(0) * b(0) - a(1) * b(1); }
    static Weight even_root() { return {0, 2}; }
    static std::vector<Weight> odd_roots() { return {{1, 1}, {1, -1}}; }
    static Weight rho0() { return {0, 1}; }
    static Weight rho1() { return {1, 0}; }
    static Weight rho() { return rho0() - rho1(); }
    static Weight w1() { return {1, 0}; }
    static Weight w2() { return {1, 1}; }
};

// pi = -2(epsilon - delta) - l (2 delta). K_pi = K1^{-l} K2^{-2} has no runtime role.
struct PivotalData {
    int l;
    explicit PivotalData(int l); // throws domain unless l odd >= 3
    Complex xi() const;
    Weight pivot() const;
};

struct AlphaCoords {
    Complex a1, a2;
    // a1 = mu1 - 2 + l, a2 = 2 mu2 + 2 - 2l
    static AlphaCoords from_weights(Complex mu1, Complex mu2, int l);
    std::pair<Complex, Complex> to_weights(int l) const;
};

// xi^x for complex x
Complex xi_pow(Complex x, int l);

// {x} = xi^x - xi^-x
Complex bracket(Complex x, int l);

Complex twist(const AlphaCoords& a, int l);
// xi^{2 l mu2} xi^{mu1^2 + 2 mu1 mu2 - 4 mu2 - 2 mu1}
Complex twist_from_weights(Complex mu1, Complex mu2, int l);

// Throws atypical when {a'_2} vanishes.
Complex s_matrix(const AlphaCoords& a, const AlphaCoords& a_prime, int l);
// Throws atypical at a pole.
Complex modified_dimension(const AlphaCoords& a, int l);

// Per-vertex (mu1, mu2) mod Z.
struct CGPColor {
    std::vector<Rational> mu1, mu2;
};

// sum_J B_IJ mu^J in Z x Z for every I
bool is_closed(const MatrixZ& B, const CGPColor& color);

// mu = B^{-1} x mod Z with x uniform in (Z / det B)^L, independently per factor.
CGPColor sample_closed_color(const MatrixZ& B, std::mt19937_64& rng);

// Whether every d, S' and F factor along the sums is finite.
bool is_typical(const PlumbingGraph& g, const CGPColor& color, int l);

struct StateSum {
    Complex vertex_form;   // sum over (s, t) of d, twist and S' factors
    Complex literal_form;  // (1/l^{L+1}) prod (e^{2 pi i mu1} - e^{-2 pi i mu1})^{deg-2} sum F xi^{...}
    Complex exact_form;    // same sum with the prefactor forced by the vertex form
    double relative_difference() const; // vertex vs literal
};

// Edges are oriented away from the distinguished vertex (index i0).
// Throws closure for non-closed colors and atypical on any pole.
StateSum state_sum(const PlumbingGraph& g, const CGPColor& color, int l, int i0 = 0);

// |LHS - RHS| of the Gauss reciprocity identity
//   sum_{r mod l} e(r^T M r / l + p^T r / l)
//   = e^{i pi sigma/4} (l/2)^{N/2} |det M|^{-1/2} sum_{delta mod 2M} exp(-i pi l/2 (delta + p/l)^T M^-1 (delta + p/l)).
// 2M must be integral.
double gauss_reciprocity_residual(const MatrixQ& M, const VectorZ& p, int l);
// LHS alone; exposed for periodicity checks
Complex gauss_sum(const MatrixQ& M, const VectorZ& p, int l);

} // namespace zhat::cgp

#endif
