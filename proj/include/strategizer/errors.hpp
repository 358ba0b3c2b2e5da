#pragma once

#include <stdexcept>
#include <string>

namespace strategizer {

// Every failure raised by the library derives from Error and carries a stable
// machine-readable kind ("DomainError", "ConvergenceFailure", ...).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define STRATEGIZER_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& message) : Error(#Name, message) {}    \
    }

STRATEGIZER_DEFINE_ERROR(DomainError);
STRATEGIZER_DEFINE_ERROR(ConstraintViolation);
STRATEGIZER_DEFINE_ERROR(ConvergenceFailure);
STRATEGIZER_DEFINE_ERROR(EmptyDataset);
STRATEGIZER_DEFINE_ERROR(ValidationError);
STRATEGIZER_DEFINE_ERROR(DegenerateScenario);
STRATEGIZER_DEFINE_ERROR(ShapeMismatch);
STRATEGIZER_DEFINE_ERROR(SamplingExhausted);
STRATEGIZER_DEFINE_ERROR(SchemaError);

#undef STRATEGIZER_DEFINE_ERROR

// Row/column aware CSV failure.
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::string column, const std::string& reason)
        : Error("ParseError", "row " + std::to_string(row) + ", column '" + column + "': " + reason),
          row_(row), column_(std::move(column)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

// Wraps a fit/domain failure with the attribute (or infra curve) it belongs to.
class AttributeError : public Error {
public:
    AttributeError(const Error& cause, std::string attribute)
        : Error(cause.kind(), attribute + ": " + cause.what()), attribute_(std::move(attribute)) {}

    const std::string& attribute() const noexcept { return attribute_; }

private:
    std::string attribute_;
};

} // namespace strategizer
