#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>

namespace ntm {

/// A tape symbol: a short printable token. `_` is the blank symbol and
/// `*` is reserved for rule wildcards, so it can never be a symbol.
class Symbol {
 public:
  static constexpr std::string_view kBlankToken = "_";
  static constexpr std::string_view kWildcardToken = "*";

  Symbol() : token_(kBlankToken) {}
  explicit Symbol(std::string token);

  static Symbol blank() { return Symbol(); }

  bool is_blank() const noexcept { return token_ == kBlankToken; }
  const std::string& str() const noexcept { return token_; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol&, const Symbol&) = default;

 private:
  std::string token_;
};

using Alphabet = std::set<Symbol>;

/// True when `token` is a legal symbol token (non-empty, printable ASCII,
/// no whitespace, not the wildcard).
bool is_valid_token(std::string_view token);

}  // namespace ntm
