#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptsym {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input matrix is not Hermitian within the requested tolerance.
class NotHermitianError : public Error {
public:
    NotHermitianError(double residual, double tolerance)
        : Error("matrix is not Hermitian: max|M - M^dagger| = " + std::to_string(residual) +
                " exceeds tolerance " + std::to_string(tolerance)),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// A matrix or vector entry is NaN or infinite.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

/// The eigensolver did not reach the residual contract.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// An eigenvector with (numerically) zero norm was passed where a unit vector is required.
class ZeroVectorError : public Error {
public:
    using Error::Error;
};

/// P and T passed to the PT composition do not satisfy PT = TP.
class CompositionMismatchError : public Error {
public:
    CompositionMismatchError(double residual, double tolerance)
        : Error("PT != TP: residual " + std::to_string(residual) + " exceeds tolerance " +
                std::to_string(tolerance)),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// A chi-norm diagonal entry deviates from unit magnitude.
class NormAnomalousError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnknownFunctionError : public SyntaxError {
public:
    UnknownFunctionError(const std::string& name, std::size_t position)
        : SyntaxError("unknown function '" + name + "'", position) {}
};

class UnknownIdentifierError : public SyntaxError {
public:
    UnknownIdentifierError(const std::string& name, std::size_t position)
        : SyntaxError("unknown identifier '" + name + "'", position) {}
};

/// Potential evaluation produced NaN/Inf at a grid point.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Reflection requested on a grid that is not symmetric about the origin.
class AsymmetricGridError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// Every sample of a wavefunction is below the amplitude floor.
class AllBelowFloorError : public Error {
public:
    using Error::Error;
};

/// demo2x2 called with b = c = 0 (theta undefined).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class FileNotFoundError : public Error {
public:
    using Error::Error;
};

/// Input file does not match the documented schema.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Invalid command-line or call arguments.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace ptsym
