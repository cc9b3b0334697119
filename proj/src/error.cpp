#include "ntm/error.hpp"

namespace ntm {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::InvalidSymbol: return "InvalidSymbol";
    case Errc::SymbolNotInAlphabet: return "SymbolNotInAlphabet";
    case Errc::BlankWriteRejected: return "BlankWriteRejected";
    case Errc::AlreadyHalted: return "AlreadyHalted";
    case Errc::InvalidMachine: return "InvalidMachine";
    case Errc::IncompatibleWiring: return "IncompatibleWiring";
    case Errc::PortNotFound: return "PortNotFound";
    case Errc::PortInUse: return "PortInUse";
    case Errc::DoubleWriter: return "DoubleWriter";
    case Errc::InvalidNetwork: return "InvalidNetwork";
    case Errc::LogMismatch: return "LogMismatch";
    case Errc::UnencodableValue: return "UnencodableValue";
    case Errc::UnboundVector: return "UnboundVector";
    case Errc::NotASubset: return "NotASubset";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::UnknownSection: return "UnknownSection";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::IncompleteMapping: return "IncompleteMapping";
    case Errc::FormatError: return "FormatError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(Errc code, std::size_t line, std::size_t column, const std::string& message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

}  // namespace ntm
