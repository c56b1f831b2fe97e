#ifndef ZHAT_CHAMBER_HPP
#define ZHAT_CHAMBER_HPP

#include <string>
#include <vector>

#include "zhat/numeric.hpp"

namespace zhat {

// Signs on the vertices of degree != 2, listed by vertex index.
struct Chamber {
    std::vector<int> vertices;
    std::vector<int> alpha;

    // +-1 on listed vertices, 0 elsewhere
    int sign_at(int index) const;
    Chamber negated() const;
    std::string to_string() const; // "(1,-1,-1,-1)"
    bool operator==(const Chamber&) const = default;
};

// Exact. Closed forms for k <= 2; above that the minimum of v^T X v on the
// standard simplex is found among the KKT points of its faces.
bool is_copositive(const MatrixQ& X);

// Largest k accepted by is_copositive (2^k faces are visited).
constexpr int kCopositiveMaxDimension = 20;

// X_IJ = alpha_I alpha_J Binv_IJ restricted to the listed vertices.
MatrixQ chamber_form(const MatrixQ& Binv, const Chamber& c, const std::vector<int>& subset);

bool is_good_chamber(const MatrixQ& Binv, const std::vector<int>& degrees, const Chamber& c);

// All good chambers, sorted so that +alpha precedes -alpha.
std::vector<Chamber> find_good_chambers(const MatrixZ& B, const MatrixQ& Binv,
                                        const std::vector<int>& degrees);

// "+-(1,-1,-1,-1)" when the list is one pair, else a comma list.
std::string describe_chambers(const std::vector<Chamber>& chambers);

} // namespace zhat

#endif
