#include "ntm/tape.hpp"

#include "ntm/error.hpp"

namespace ntm {

namespace {
const Symbol kBlank{};
}

InputTape::InputTape(std::shared_ptr<const Alphabet> alphabet) : alphabet_(std::move(alphabet)) {}

InputTape InputTape::from_parts(std::shared_ptr<const Alphabet> alphabet, std::vector<Symbol> cells,
                                std::size_t read_head) {
  InputTape tape(std::move(alphabet));
  for (const auto& s : cells) tape.write(s);
  if (read_head > tape.write_head()) {
    throw Error(Errc::InvalidArgument, "read head past write head");
  }
  tape.read_head_ = read_head;
  return tape;
}

void InputTape::write(const Symbol& s) {
  if (s.is_blank()) throw Error(Errc::BlankWriteRejected, "blank means no data and cannot be written");
  if (alphabet_ && !alphabet_->contains(s)) {
    throw Error(Errc::SymbolNotInAlphabet, "symbol '" + s.str() + "' not in the tape alphabet");
  }
  cells_.push_back(s);
}

Symbol InputTape::read() {
  if (read_head_ == cells_.size()) return Symbol::blank();
  return cells_[read_head_++];
}

const Symbol& InputTape::scan() const noexcept {
  return read_head_ < cells_.size() ? cells_[read_head_] : kBlank;
}

WorkTape::WorkTape(std::vector<Symbol> cells, std::size_t head) : cells_(std::move(cells)), head_(head) {}

const Symbol& WorkTape::scan() const noexcept { return head_ < cells_.size() ? cells_[head_] : kBlank; }

void WorkTape::write(const Symbol& s) {
  if (head_ >= cells_.size()) {
    if (s.is_blank()) return;
    cells_.resize(head_ + 1);
  }
  cells_[head_] = s;
}

void WorkTape::move(HeadMove m) {
  switch (m) {
    case HeadMove::Left:
      if (head_ > 0) --head_;
      break;
    case HeadMove::Right: ++head_; break;
    case HeadMove::Stay: break;
  }
}

std::vector<Symbol> WorkTape::contents() const {
  std::size_t n = cells_.size();
  while (n > 0 && cells_[n - 1].is_blank()) --n;
  return {cells_.begin(), cells_.begin() + static_cast<std::ptrdiff_t>(n)};
}

}  // namespace ntm
