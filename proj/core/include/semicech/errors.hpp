#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semicech {

/// Base of every error raised by the library. `location` is a JSON pointer
/// into the document that produced the failing value, when known.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message), message_(message) {}
  Error(const std::string& message, const std::string& location)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        message_(message),
        location_(location) {}

  const std::string& message() const noexcept { return message_; }
  const std::string& location() const noexcept { return location_; }

  /// Throws a copy of the same dynamic type carrying `location`.
  [[noreturn]] virtual void rethrow_at(const std::string& location) const { throw Error(message_, location); }

 private:
  std::string message_;
  std::string location_;
};

#define SEMICECH_DEFINE_ERROR(Name)                                                        \
  class Name : public Error {                                                              \
   public:                                                                                 \
    using Error::Error;                                                                    \
    [[noreturn]] void rethrow_at(const std::string& location) const override {           \
      throw Name(message(), location);                                                     \
    }                                                                                      \
  }

// semiring
SEMICECH_DEFINE_ERROR(NotCancellative);
SEMICECH_DEFINE_ERROR(NoNegation);
SEMICECH_DEFINE_ERROR(NotSemifield);
SEMICECH_DEFINE_ERROR(NotAnElement);
SEMICECH_DEFINE_ERROR(UnknownSemiring);

// scenario
SEMICECH_DEFINE_ERROR(CoverageError);
SEMICECH_DEFINE_ERROR(MaximalityError);
SEMICECH_DEFINE_ERROR(EmptyOutcome);
SEMICECH_DEFINE_ERROR(ScenarioError);
SEMICECH_DEFINE_ERROR(NotSubset);

// model
SEMICECH_DEFINE_ERROR(NormalizationError);
SEMICECH_DEFINE_ERROR(UnknownEvent);
SEMICECH_DEFINE_ERROR(NotSubcontext);
SEMICECH_DEFINE_ERROR(TooLarge);

// obstruction / analysis
SEMICECH_DEFINE_ERROR(Disturbing);
SEMICECH_DEFINE_ERROR(ZeroMeasureEvent);
SEMICECH_DEFINE_ERROR(NoAgreeingSection);

#undef SEMICECH_DEFINE_ERROR

// formats
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace semicech
