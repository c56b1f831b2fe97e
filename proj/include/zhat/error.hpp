#ifndef ZHAT_ERROR_HPP
#define ZHAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zhat {

enum class ErrorKind {
    invalid_graph,
    non_generic,
    no_chamber,
    not_positive_definite,
    positive_betti,
    singular_matrix,
    inapplicable_move,
    divergence,
    regularization,
    conductor_mismatch,
    domain,
    atypical,
    closure,
    parse,
    unsupported,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace zhat

#endif
