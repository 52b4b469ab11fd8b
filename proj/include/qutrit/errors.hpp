#pragma once

#include <stdexcept>
#include <string>

namespace qutrit {

/// Argument outside the mathematical domain of an operation (bad index,
/// modulus out of range, unknown label).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input that is in-domain but fails a physical validity check
/// (non-unit trace, non-Hermitian matrix, negative probability).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation called outside the regime where its closed form holds,
/// e.g. an exact resonance solution requested off resonance.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Adaptive integrator could not make progress (step size underflow).
class StiffnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite value produced by a right-hand side.
class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed command-line or configuration input (unknown parameter,
/// bad grid syntax, unknown scenario or suite).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qutrit
