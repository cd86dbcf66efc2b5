#pragma once

#include <stdexcept>
#include <string>

namespace crpinv
{

/// Operand shapes do not conform.
class ShapeError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A square matrix that had to be inverted turned out singular.
class SingularMatrixError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// The right-hand side (or target vector) lies outside the required subspace.
class InconsistentSystemError : public std::runtime_error
{
public:
    InconsistentSystemError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual)
    {
    }

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace crpinv
