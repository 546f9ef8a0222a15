#ifndef FILLINGS_ERRORS_HPP_
#define FILLINGS_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fillings {

  // Base class for everything this library throws.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed presentation or word text. Line and column are 1-based.
  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& what)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + what),
          _line(line),
          _column(column) {}

    [[nodiscard]] std::size_t line() const noexcept {
      return _line;
    }
    [[nodiscard]] std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  // A construction would exceed the configured memory ceiling, tuple cap
  // or grammar-size cap.
  class ResourceLimitExceeded : public Error {
   public:
    using Error::Error;
  };

  // The tuple enumeration of the compression transform is over its cap.
  class CombinatorialBlowup : public ResourceLimitExceeded {
   public:
    using ResourceLimitExceeded::ResourceLimitExceeded;
  };

  class EmptyRelatorSet : public InvalidArgument {
   public:
    EmptyRelatorSet() : InvalidArgument("the relator set is empty") {}
    explicit EmptyRelatorSet(std::string const& what) : InvalidArgument(what) {}
  };

  class MissingFaceData : public Error {
   public:
    MissingFaceData() : Error("the graph carries no face-loop records") {}
    explicit MissingFaceData(std::string const& what) : Error(what) {}
  };

}  // namespace fillings

#endif  // FILLINGS_ERRORS_HPP_
