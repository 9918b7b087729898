#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gapcluster {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input or bad request: maps to CLI exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Numerical failure during an otherwise valid computation: CLI exit code 1.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& what)
        : InputError("parse error at row " + std::to_string(row) + ", column "
                     + std::to_string(column) + ": " + what),
          row(row), column(column) {}

    std::size_t row;    // 1-based file line
    std::size_t column; // 1-based cell index
};

class EmptyDataset : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedMetric : public InputError {
public:
    using InputError::InputError;
};

class InvalidK : public InputError {
public:
    using InputError::InputError;
};

class IndexOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class InvalidConfig : public InputError {
public:
    using InputError::InputError;
};

class InvalidRow : public InputError {
public:
    using InputError::InputError;
};

class InvalidScenario : public InputError {
public:
    using InputError::InputError;
};

class NonPositiveSide : public InputError {
public:
    using InputError::InputError;
};

class NotTwoClusters : public InputError {
public:
    using InputError::InputError;
};

class HeterogeneousReports : public InputError {
public:
    using InputError::InputError;
};

/// Some W_k along the dendrogram is exactly zero (duplicate-point data);
/// log(W_k) would be undefined.
class DegenerateDispersion : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A log-scale gap was requested on a non-positive dispersion value.
class NonPositiveDispersion : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace gapcluster
