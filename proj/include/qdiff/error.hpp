#pragma once

#include <stdexcept>
#include <string>

namespace qdiff {

// Root of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : ParseError("syntax error at " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public ParseError {
 public:
  explicit UnknownIdentifier(const std::string& name)
      : ParseError("unknown identifier '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DomainError : public Error {
 public:
  DomainError(const std::string& function, double argument)
      : Error("domain error in " + function + " at argument " + std::to_string(argument)),
        function_(function),
        argument_(argument) {}
  const std::string& function() const { return function_; }
  double argument() const { return argument_; }

 private:
  std::string function_;
  double argument_;
};

#define QDIFF_SIMPLE_ERROR(Name)   \
  class Name : public Error {      \
   public:                         \
    using Error::Error;            \
  };

QDIFF_SIMPLE_ERROR(DegenerateImmersion)
QDIFF_SIMPLE_ERROR(SingularCoframe)
QDIFF_SIMPLE_ERROR(QuadratureNonConvergence)
QDIFF_SIMPLE_ERROR(InvalidRange)
QDIFF_SIMPLE_ERROR(NotAFunction)
QDIFF_SIMPLE_ERROR(NonPositiveMetric)
QDIFF_SIMPLE_ERROR(LoopThroughZero)
QDIFF_SIMPLE_ERROR(UnresolvedWinding)
QDIFF_SIMPLE_ERROR(AmbiguousLoop)
QDIFF_SIMPLE_ERROR(NoConvergence)
QDIFF_SIMPLE_ERROR(NotOnSphere)
QDIFF_SIMPLE_ERROR(NotTangent)
QDIFF_SIMPLE_ERROR(ConfigError)
QDIFF_SIMPLE_ERROR(IoError)

#undef QDIFF_SIMPLE_ERROR

}  // namespace qdiff
