#pragma once

#include <stdexcept>
#include <string>

namespace modrep {

// All library errors derive from Error so callers can catch one type.
// The name() tag is stable and used verbatim in CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string tag, const std::string& what)
        : std::runtime_error(tag + ": " + what), tag_(std::move(tag)) {}
    const std::string& name() const noexcept { return tag_; }

private:
    std::string tag_;
};

struct NotCoprime : Error {
    explicit NotCoprime(const std::string& w) : Error("NotCoprime", w) {}
};

struct OrderMismatch : Error {
    explicit OrderMismatch(const std::string& w) : Error("OrderMismatch", w) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& w) : Error("DivisionByZero", w) {}
};

struct InvalidKacData : Error {
    explicit InvalidKacData(const std::string& w) : Error("InvalidKacData", w) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& w) : Error("SchemaError", w) {}
};

// Carries which axiom failed and at which entry indices.
struct AxiomViolation : Error {
    AxiomViolation(const std::string& axiom, const std::string& witness)
        : Error("AxiomViolation", axiom + " (witness: " + witness + ")") {}
};

struct NonIntegerFusion : Error {
    explicit NonIntegerFusion(const std::string& w) : Error("NonIntegerFusion", w) {}
};

struct NotMonomial : Error {
    explicit NotMonomial(const std::string& w) : Error("NotMonomial", w) {}
};

struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& w) : Error("NotUnimodular", w) {}
};

struct NotDiagonal : Error {
    explicit NotDiagonal(const std::string& w) : Error("NotDiagonal", w) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& w) : Error("BudgetExceeded", w) {}
};

}  // namespace modrep
