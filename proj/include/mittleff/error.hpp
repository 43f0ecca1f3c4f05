#pragma once

#include <stdexcept>
#include <string>

namespace mittleff {

// Failure taxonomy. Codes are grouped into the three caller-facing classes
// (parameter misuse, contour/sector violation, convergence failure) that the
// CLI maps onto exit codes 2/3/4.
enum class errc {
    rho_out_of_range,
    delta_out_of_range,
    epsilon_non_positive,
    empty_sector,
    zero_modulus,
    zero_argument,
    invalid_tol,
    invalid_interval,
    parse_error,
    no_convergence,
    overflow,
    pole_contact,
    truncation_too_small,
    no_decay,
    sector_violation,
    depth_exceeded,
    non_finite,
    method_unavailable,
    internal_inconsistency,
};

inline const char* errc_name(errc c) noexcept {
    switch (c) {
        case errc::rho_out_of_range:       return "rho_out_of_range";
        case errc::delta_out_of_range:     return "delta_out_of_range";
        case errc::epsilon_non_positive:   return "epsilon_non_positive";
        case errc::empty_sector:           return "empty_sector";
        case errc::zero_modulus:           return "zero_modulus";
        case errc::zero_argument:          return "zero_argument";
        case errc::invalid_tol:            return "invalid_tol";
        case errc::invalid_interval:       return "invalid_interval";
        case errc::parse_error:            return "parse_error";
        case errc::no_convergence:         return "no_convergence";
        case errc::overflow:               return "overflow";
        case errc::pole_contact:           return "pole_contact";
        case errc::truncation_too_small:   return "truncation_too_small";
        case errc::no_decay:               return "no_decay";
        case errc::sector_violation:       return "sector_violation";
        case errc::depth_exceeded:         return "depth_exceeded";
        case errc::non_finite:             return "non_finite";
        case errc::method_unavailable:     return "method_unavailable";
        case errc::internal_inconsistency: return "internal_inconsistency";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
    throw Error(code, std::string(errc_name(code)) + ": " + msg);
}

// Exit-code classes (see README, "Exit codes").
inline bool is_parameter_error(errc c) noexcept {
    switch (c) {
        case errc::rho_out_of_range:
        case errc::delta_out_of_range:
        case errc::epsilon_non_positive:
        case errc::empty_sector:
        case errc::zero_modulus:
        case errc::zero_argument:
        case errc::invalid_tol:
        case errc::invalid_interval:
        case errc::parse_error:
            return true;
        default:
            return false;
    }
}

inline bool is_contour_violation(errc c) noexcept {
    switch (c) {
        case errc::sector_violation:
        case errc::no_decay:
        case errc::truncation_too_small:
        case errc::pole_contact:
        case errc::method_unavailable:
            return true;
        default:
            return false;
    }
}

inline bool is_convergence_failure(errc c) noexcept {
    switch (c) {
        case errc::no_convergence:
        case errc::depth_exceeded:
        case errc::non_finite:
        case errc::overflow:
        case errc::internal_inconsistency:
            return true;
        default:
            return false;
    }
}

}  // namespace mittleff
