#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ntm {

enum class Errc {
  InvalidSymbol,
  SymbolNotInAlphabet,
  BlankWriteRejected,
  AlreadyHalted,
  InvalidMachine,
  IncompatibleWiring,
  PortNotFound,
  PortInUse,
  DoubleWriter,
  InvalidNetwork,
  LogMismatch,
  UnencodableValue,
  UnboundVector,
  NotASubset,
  SyntaxError,
  DuplicateLabel,
  UnknownSection,
  InvalidModel,
  IncompleteMapping,
  FormatError,
  InvalidArgument,
};

const char* to_string(Errc code);

/// Every failure raised by the library. `code()` identifies the error kind
/// named in the public contracts; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the model parser. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace ntm
