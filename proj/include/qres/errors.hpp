#pragma once

#include <stdexcept>
#include <string>

namespace qres {

/// Base class for all domain errors. `name()` is the stable identifier
/// printed by the CLI; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Malformed input text (bad JSON, wrong types).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message) : Error("ParseError", message) {}
};

/// Structurally valid input violating an invariant; `field()` names the culprit.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& message)
        : Error("ValidationError", field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& message) : Error("DimensionMismatch", message) {}
};

class NotControllable : public Error {
public:
    explicit NotControllable(const std::string& message) : Error("NotControllable", message) {}
};

/// An LP outcome that is impossible for a well-posed problem; signals
/// tolerance breakdown rather than a property of the system.
class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& message) : Error("NumericalFailure", message) {}
};

class VertexBudgetExceeded : public Error {
public:
    explicit VertexBudgetExceeded(const std::string& message)
        : Error("VertexBudgetExceeded", message) {}
};

class MultipleColumns : public Error {
public:
    explicit MultipleColumns(const std::string& message) : Error("MultipleColumns", message) {}
};

class DegenerateDenominator : public Error {
public:
    explicit DegenerateDenominator(const std::string& message)
        : Error("DegenerateDenominator", message) {}
};

class SingularElements : public Error {
public:
    explicit SingularElements(const std::string& message) : Error("SingularElements", message) {}
};

class EmptyIntersection : public Error {
public:
    explicit EmptyIntersection(const std::string& message) : Error("EmptyIntersection", message) {}
};

} // namespace qres
