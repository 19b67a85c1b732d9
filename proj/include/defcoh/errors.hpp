#pragma once

#include <stdexcept>
#include <string>

namespace defcoh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& m) : Error(m) {}
};

struct IncompatibleFields : Error {
  explicit IncompatibleFields(const std::string& m) : Error("incompatible fields: " + m) {}
};

struct PoleAtSpecialization : Error {
  explicit PoleAtSpecialization(const std::string& m) : Error("pole at specialization: " + m) {}
};

struct NoEmbedding : Error {
  explicit NoEmbedding(const std::string& m) : Error("no embedding: " + m) {}
};

struct DivisibilityError : Error {
  explicit DivisibilityError(const std::string& m) : Error("not divisible: " + m) {}
};

struct AlgebraMismatch : Error {
  explicit AlgebraMismatch(const std::string& m) : Error("algebra mismatch: " + m) {}
};

struct NonCommutingDerivations : Error {
  explicit NonCommutingDerivations(const std::string& m) : Error("derivations do not commute: " + m) {}
};

struct NotACocycle : Error {
  explicit NotACocycle(const std::string& m) : Error("not a cocycle: " + m) {}
};

struct NotAComplex : Error {
  explicit NotAComplex(const std::string& m) : Error("not a complex: " + m) {}
};

struct NotADeformation : Error {
  explicit NotADeformation(const std::string& m) : Error("not a deformation: " + m) {}
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& m) : Error("out of range: " + m) {}
};

struct InvalidParameters : Error {
  explicit InvalidParameters(const std::string& m) : Error("invalid parameters: " + m) {}
};

struct ParseFailure : Error {
  explicit ParseFailure(const std::string& m) : Error("parse failure: " + m) {}
};

struct IOFailure : Error {
  explicit IOFailure(const std::string& m) : Error("i/o failure: " + m) {}
};

}  // namespace defcoh
