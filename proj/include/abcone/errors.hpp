#ifndef ABCONE_ERRORS_HPP
#define ABCONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abcone {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Evaluation requested exactly at (or within tolerance of) a gamma pole.
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// A series or iteration exhausted its budget before reaching tolerance.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// A root scan found no sign change in the search window.
struct BracketError : Error {
    explicit BracketError(const std::string& msg) : Error(msg) {}
};

// The channel does not support a bound state (repulsive or weak coupling).
struct NoBoundState : Error {
    explicit NoBoundState(const std::string& msg) : Error(msg) {}
};

// phi*s equals the effective momentum magnitude: the coupling ratio blows up.
struct SingularCoupling : Error {
    explicit SingularCoupling(const std::string& msg) : Error(msg) {}
};

// The wavenumber sits on the resonance pole of mu(k); delta jumps by pi here.
struct PoleAtK : Error {
    explicit PoleAtK(const std::string& msg) : Error(msg) {}
};

}  // namespace abcone

#endif
