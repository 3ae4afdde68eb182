#ifndef BETASPEC_ERRORS_HPP
#define BETASPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace betaspec {

/// Iterative solver failed to converge (inverse iteration, bisection).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure (quadrature, fit) could not reach its tolerance.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid experiment configuration (maps to CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace betaspec

#endif // BETASPEC_ERRORS_HPP
