#include "ntm/symbol.hpp"

#include "ntm/error.hpp"

namespace ntm {

bool is_valid_token(std::string_view token) {
  if (token.empty() || token == Symbol::kWildcardToken) return false;
  for (char c : token) {
    if (c <= ' ' || c > '~') return false;
  }
  return true;
}

Symbol::Symbol(std::string token) : token_(std::move(token)) {
  if (!is_valid_token(token_)) throw Error(Errc::InvalidSymbol, "'" + token_ + "' is not a valid symbol");
}

}  // namespace ntm
