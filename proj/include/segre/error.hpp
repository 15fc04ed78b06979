#ifndef SEGRE_ERROR_HPP
#define SEGRE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace segre {

// Base for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed shapes, out-of-range modes/indices, incompatible operands.
struct shape_error : error {
    explicit shape_error(const std::string& msg) : error(msg) {}
};

// Violated preconditions (singular map where invertible required, etc.).
struct contract_error : error {
    explicit contract_error(const std::string& msg) : error(msg) {}
};

// Inputs outside the supported regime (e.g. wedge over a 1-dim mode).
struct unsupported_error : error {
    explicit unsupported_error(const std::string& msg) : error(msg) {}
};

// Degenerate inputs with no meaningful answer (e.g. zero tensor core).
struct degenerate_error : error {
    explicit degenerate_error(const std::string& msg) : error(msg) {}
};

// Text that fails the rational / file grammar.
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

} // namespace segre

#endif
