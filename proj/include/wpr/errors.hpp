#ifndef WPR_ERRORS_HPP
#define WPR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wpr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class UnsupportedCoefficient : public Error {
 public:
  using Error::Error;
};

class TierUnsupported : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A checked precondition of a certifier did not hold. `stage` names the
/// pipeline step that failed.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// A certificate failed its own replay. Always a bug.
class InconsistentCertificate : public Error {
 public:
  using Error::Error;
};

/// Raised by constructors that validate algebraic invariants (well-defined
/// maps, d^2 = 0, commuting squares).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace wpr

#endif
