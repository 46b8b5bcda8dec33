#pragma once

#include <stdexcept>
#include <string>

namespace wpo {

// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A relation handed to make_poset breaks one of the poset axioms.
struct AxiomViolation : Error {
    AxiomViolation(std::string kind_, std::string witness_)
        : Error("poset axiom violated (" + kind_ + "): " + witness_),
          kind(std::move(kind_)),
          witness(std::move(witness_)) {}
    std::string kind;     // "reflexivity" | "antisymmetry" | "transitivity"
    std::string witness;  // offending element or pair
};

struct UnknownIdentifier : Error {
    explicit UnknownIdentifier(const std::string& id)
        : Error("unknown identifier: " + id), identifier(id) {}
    std::string identifier;
};

struct BoundExceeded : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct NoMu : Error { using Error::Error; };
struct NotInTrace : Error { using Error::Error; };
struct DuplicateSubterm : Error { using Error::Error; };
struct SubordersNotPartial : Error { using Error::Error; };
struct NotALimit : Error { using Error::Error; };
struct UnknownTransformation : Error { using Error::Error; };

struct SyntaxError : Error {
    explicit SyntaxError(const std::string& what_, int line_ = -1)
        : Error(line_ >= 0 ? "line " + std::to_string(line_) + ": " + what_ : what_),
          line(line_) {}
    int line;
};

}  // namespace wpo
