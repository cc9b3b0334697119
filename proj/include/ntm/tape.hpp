#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "ntm/machine.hpp"
#include "ntm/symbol.hpp"

namespace ntm {

/// Two-headed input tape. Head-1 (the writer, owned by the peer) appends at
/// the frontier; head-2 (the reader, owned by the machine) consumes. Cells at
/// or past the frontier are blank, so the tape behaves as an unbounded
/// single-producer single-consumer queue.
///
/// Invariants: read_head() <= write_head(); both heads only move right.
class InputTape {
 public:
  InputTape() = default;

  /// Writes are checked against `alphabet` (the owning machine's tape
  /// alphabet). A null alphabet accepts any non-blank symbol.
  explicit InputTape(std::shared_ptr<const Alphabet> alphabet);

  /// Rebuilds a tape from its observable parts.
  static InputTape from_parts(std::shared_ptr<const Alphabet> alphabet, std::vector<Symbol> cells,
                              std::size_t read_head);

  /// Head-1: prints `s` at the frontier and moves right.
  /// Throws BlankWriteRejected or SymbolNotInAlphabet.
  void write(const Symbol& s);

  /// Head-2: returns the scanned symbol and moves right unless it is blank.
  Symbol read();

  const Symbol& scan() const noexcept;

  std::size_t write_head() const noexcept { return cells_.size(); }
  std::size_t read_head() const noexcept { return read_head_; }
  std::span<const Symbol> cells() const noexcept { return cells_; }

  friend bool operator==(const InputTape& a, const InputTape& b) {
    return a.read_head_ == b.read_head_ && a.cells_ == b.cells_;
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<Symbol> cells_;
  std::size_t read_head_ = 0;
};

/// One-way infinite working tape. Moving left at cell 0 stays at 0.
class WorkTape {
 public:
  WorkTape() = default;
  WorkTape(std::vector<Symbol> cells, std::size_t head);

  const Symbol& scan() const noexcept;
  void write(const Symbol& s);
  void move(HeadMove m);

  std::size_t head() const noexcept { return head_; }

  /// Cell contents with trailing blanks removed.
  std::vector<Symbol> contents() const;

  friend bool operator==(const WorkTape& a, const WorkTape& b) {
    return a.head_ == b.head_ && a.contents() == b.contents();
  }

 private:
  std::vector<Symbol> cells_;
  std::size_t head_ = 0;
};

}  // namespace ntm
