#pragma once

#include <stdexcept>
#include <string>

namespace dslit {

// Thrown when a velocity is requested where the total density sits below
// the configured floor and the ratio J/P is meaningless.
struct DegenerateDensity : std::runtime_error {
    explicit DegenerateDensity(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature failed to reach the requested error estimate within the node budget.
struct QuadratureUnresolved : std::runtime_error {
    explicit QuadratureUnresolved(const std::string& msg) : std::runtime_error(msg) {}
};

// Modular decomposition is undefined (x = 0 or t = 0: the phase term vanishes).
struct UndefinedSplit : std::runtime_error {
    explicit UndefinedSplit(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation requested on a configuration it does not support (e.g. v_x != 0
// in the modular bookkeeping, which is defined for symmetric setups only).
struct UnsupportedConfiguration : std::runtime_error {
    explicit UnsupportedConfiguration(const std::string& msg) : std::runtime_error(msg) {}
};

// Explicit lattice step would violate r = D*dt/dx^2 <= 1/2.
struct StabilityViolation : std::runtime_error {
    explicit StabilityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// Lattice domain too small to hold the initial packet (needs +-10 sigma0).
struct DomainTooSmall : std::runtime_error {
    explicit DomainTooSmall(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file could not be parsed; carries the offending line number and token.
struct ParseError : std::runtime_error {
    int line;
    std::string token;
    ParseError(int line_, std::string token_, const std::string& msg)
        : std::runtime_error(msg), line(line_), token(std::move(token_)) {}
};

// Config parsed but violates a named invariant (e.g. sigma0 <= 0).
struct ValidationError : std::runtime_error {
    std::string invariant;
    ValidationError(std::string invariant_, const std::string& msg)
        : std::runtime_error(msg), invariant(std::move(invariant_)) {}
};

// Filesystem-level failure (missing config file, unwritable output dir).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dslit
