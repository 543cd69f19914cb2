#pragma once

// Error taxonomy.  Precondition violations (bad caller input) carry an errc
// so the CLI can map them to exit code 2; internal_error marks invariant
// breakage inside the library (exit code 1).

#include <stdexcept>
#include <string>

namespace klat {

enum class errc {
    degenerate_lattice,
    zero_vector,
    degenerate_span,
    non_primitive,
    not_positive_definite,
    not_a_root_set,
    unrecognised_component,
    not_a_root,
    odd_root_count,
    bad_residue,
    invalid_order,
    empty_group,
    parse_error,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::degenerate_lattice:     return "DegenerateLattice";
        case errc::zero_vector:            return "ZeroVector";
        case errc::degenerate_span:        return "DegenerateSpan";
        case errc::non_primitive:          return "NonPrimitive";
        case errc::not_positive_definite:  return "NotPositiveDefinite";
        case errc::not_a_root_set:         return "NotARootSet";
        case errc::unrecognised_component: return "UnrecognisedComponent";
        case errc::not_a_root:             return "NotARoot";
        case errc::odd_root_count:         return "OddRootCount";
        case errc::bad_residue:            return "BadResidue";
        case errc::invalid_order:          return "InvalidOrder";
        case errc::empty_group:            return "EmptyGroup";
        case errc::parse_error:            return "ParseError";
        case errc::invalid_argument:       return "InvalidArgument";
    }
    return "Error";
}

// Precondition violation: the caller handed us input outside an operation's
// stated domain.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Broken internal invariant: always a bug, never the caller's fault.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void check(bool ok, errc code, const std::string& what) {
    if (!ok) throw error(code, what);
}

inline void assert_internal(bool ok, const char* what) {
    if (!ok) throw internal_error(what);
}

}  // namespace klat
