#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace btcts {

/// Root of the library's exception hierarchy. The three direct children
/// map onto CLI exit codes: ConfigError -> 2, DataError -> 3,
/// NumericalError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

// --- data-shaped failures ---

struct NonPositiveValue : DataError {
    std::size_t index;
    explicit NonPositiveValue(std::size_t i)
        : DataError("non-positive value at index " + std::to_string(i)), index(i) {}
};

struct SeriesTooShort : DataError {
    using DataError::DataError;
};

struct AllZeroResiduals : DataError {
    AllZeroResiduals() : DataError("residuals are identically zero") {}
};

struct InsufficientHistory : DataError {
    using DataError::DataError;
};

struct EmptyTrace : DataError {
    EmptyTrace() : DataError("forecast trace is empty") {}
};

struct DegenerateVariance : DataError {
    DegenerateVariance() : DataError("series has zero variance") {}
};

struct InconsistentSplit : DataError {
    using DataError::DataError;
};

struct FileNotFound : DataError {
    explicit FileNotFound(const std::string& path) : DataError("file not found: " + path) {}
};

struct MissingColumn : DataError {
    explicit MissingColumn(const std::string& name) : DataError("missing column: " + name) {}
};

struct UnparseableRow : DataError {
    std::size_t line;
    UnparseableRow(std::size_t line_number, const std::string& what)
        : DataError("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
};

struct EmptyAfterFilter : DataError {
    EmptyAfterFilter() : DataError("no rows remain after filtering") {}
};

// --- configuration failures ---

struct InvalidFraction : ConfigError {
    explicit InvalidFraction(double f)
        : ConfigError("split fraction must lie in (0,1), got " + std::to_string(f)) {}
};

struct DimensionMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct LagTooLarge : ConfigError {
    using ConfigError::ConfigError;
};

// --- numerical failures ---

struct RankDeficient : NumericalError {
    RankDeficient() : NumericalError("design matrix is rank deficient") {}
};

struct NumericalBreakdown : NumericalError {
    using NumericalError::NumericalError;
};

struct RhoOutOfRange : NumericalError {
    explicit RhoOutOfRange(double rho)
        : NumericalError("estimated AR(1) coefficient out of range: " + std::to_string(rho)) {}
};

struct ObjectiveNonFiniteAtStart : NumericalError {
    ObjectiveNonFiniteAtStart() : NumericalError("objective is not finite at the starting point") {}
};

struct NonFiniteEvaluation : NumericalError {
    using NumericalError::NumericalError;
};

struct RootNearUnitCircle : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace btcts
