#ifndef ZHAT_ZHAT_HPP
#define ZHAT_ZHAT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zhat/chamber.hpp"
#include "zhat/graph.hpp"
#include "zhat/homology.hpp"
#include "zhat/numeric.hpp"
#include "zhat/qseries.hpp"

namespace zhat {

struct VertexFactorSpec {
    int vertex = 0;
    int degree = 0;
    int alpha = 1; // chamber sign, unused for degree 2
};

// Coefficient of y^p z^s in the chamber expansion of
// ((y - z) / ((1 - z)(1 - y)))^(2 - degree).
// alpha = +1 expands in |y| < 1 < |z| (degree 1) or |y| < |z| (degree > 2).
BigInt vertex_coefficient(const VertexFactorSpec& spec, std::int64_t p, std::int64_t s);

struct LatticeContribution {
    VectorL n;
    VectorL m;
    Rational exponent; // -2 n^T B^{-1} m
    BigInt coefficient;
};

// Every (n, m) in (B Z^L + a) x (B Z^L + b) with nonzero coefficient and
// nonzero exponent <= N, each once. Exponent-zero points go to the profile.
void enumerate_contributions(const MatrixZ& B, const MatrixQ& Binv, const std::vector<int>& degrees,
                             const Chamber& chamber, const VectorZ& a, const VectorZ& b, const Rational& N,
                             const std::function<void(const LatticeContribution&)>& sink);

// Coefficient sums of the exponent-zero lattice points, graded by the
// total chamber coordinate T = sum_I (|p_I| + |s_I|).
struct ZeroExponentProfile {
    std::vector<BigInt> levels; // levels[T]
    std::int64_t modulus = 1;   // periods are sought among its divisors
    int max_degree = 0;         // polynomial degree bound per residue class
};

ZeroExponentProfile zero_exponent_profile(const MatrixZ& B, const MatrixQ& Binv, const std::vector<int>& degrees,
                                          const Chamber& chamber, const VectorZ& a, const VectorZ& b,
                                          int max_level = -1);

// f(0) + sum_{T>=1} f(T) with f quasi-polynomial in T beyond a finite
// prefix. Each residue class r (mod d) is summed as sum_k q_r(k + r/d),
// giving sum_j c_j zeta(-j, r/d).
ZetaCombo regularize_constant(const ZeroExponentProfile& profile);

struct ZhatOptions {
    int workers = 1;
    // The engine itself only needs a good chamber; equivalent presentations
    // obtained by moves are often indefinite.
    bool require_positive_definite = true;
};

// Everything needed about a graph before running the engine.
struct ManifoldData {
    PlumbingGraph graph;
    MatrixZ B;
    BigInt det;
    MatrixQ Binv; // empty when det == 0
    std::vector<int> degrees;
    SmithDecomposition snf;
    std::vector<SpincLabel> labels; // empty when b1 > 0
    GenericityReport genericity;
    bool positive_definite = false;
    std::vector<Chamber> chambers;
};

// Validates the graph (throws invalid_graph), fills what can be computed.
ManifoldData analyze(const PlumbingGraph& g);

// Throws the first failing precondition: b1 > 0, non-generic, not
// positive definite, no good chamber.
void require_computable(const ManifoldData& data, bool require_positive_definite = true);

const SpincLabel& find_label(const ManifoldData& data, const std::string& name);

QSeries compute_zhat(const ManifoldData& data, const VectorZ& a, const VectorZ& b, const Chamber& chamber,
                     const Rational& N, const ZhatOptions& options = {});

// Uses the first good chamber.
QSeries compute_zhat(const PlumbingGraph& g, const std::string& a, const std::string& b, const Rational& N,
                     const ZhatOptions& options = {});

using LabelPair = std::pair<std::string, std::string>;

// Every label pair, in label order.
std::vector<std::pair<LabelPair, QSeries>> compute_all(const ManifoldData& data, const Chamber& chamber,
                                                       const Rational& N, const ZhatOptions& options = {});

struct PresentationVerdict {
    bool equal = true;
    std::size_t graph = 0;                 // first presentation that disagrees
    std::optional<Rational> first_exponent; // where it disagrees
    std::string detail;
};

// Compares Z_00 (or all label pairs, matched through a bijection of labels
// fixing 0 and, for cyclic labels, of the form k -> u k) against the first graph.
PresentationVerdict compare_presentations(const std::vector<PlumbingGraph>& graphs, const Rational& N,
                                          bool all_labels, const ZhatOptions& options = {});

constexpr int kDefaultOrder = 30;

} // namespace zhat

#endif
