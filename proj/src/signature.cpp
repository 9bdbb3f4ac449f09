#include "opmk/signature.hpp"

#include <stdexcept>

namespace opmk {

namespace {

SigSymbol link(std::span<const Value> s, std::size_t pred, std::size_t pos) {
  const auto offset = static_cast<std::int32_t>(static_cast<std::int64_t>(pred) -
                                                static_cast<std::int64_t>(pos));
  return {s[pred - 1] == s[pos - 1] ? Relation::Equal : Relation::Less, offset};
}

std::vector<Symbol> initial_storage(std::span<const Value> chunk, std::size_t m, Mode mode) {
  if (chunk.size() < m) throw std::invalid_argument("SlidingSignature: chunk shorter than window");
  if (chunk.size() > 2 * m) throw std::invalid_argument("SlidingSignature: chunk longer than 2m");
  std::vector<Symbol> codes = signature_codes(compute_signature(chunk.first(m), mode));
  codes.resize(2 * m, SigSymbol::pad().code());
  return codes;
}

}  // namespace

Signature compute_signature(std::span<const Value> s, Mode mode) {
  if (mode == Mode::Distinct) require_distinct(s, "sequence");
  const std::vector<std::size_t> key = descending_tie_keys(s);
  std::vector<std::size_t> pos_of(s.size() + 1);
  for (std::size_t p = 1; p <= s.size(); ++p) pos_of[key[p - 1]] = p;

  Signature sig(s.size());
  for (std::size_t p = 1; p <= s.size(); ++p) {
    const std::size_t k = key[p - 1];
    sig[p - 1] = k == 1 ? SigSymbol::none_min() : link(s, pos_of[k - 1], p);
  }
  return sig;
}

std::vector<Symbol> signature_codes(const Signature& sig) {
  std::vector<Symbol> out(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) out[i] = sig[i].code();
  return out;
}

HammingResult signature_hamming(const Signature& a, const Signature& b, std::size_t cap) {
  if (a.size() != b.size()) throw std::invalid_argument("signature_hamming: length mismatch");
  HammingResult out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    out.positions.push_back(i + 1);
    if (out.positions.size() > cap) {
      out.exceeds_cap = true;
      break;
    }
  }
  out.distance = out.positions.size();
  return out;
}

std::string format_symbol(SigSymbol s) {
  switch (s.relation) {
    case Relation::NoneMin:
      return "0";
    case Relation::Equal:
      return "=" + std::to_string(s.offset);
    case Relation::Pad:
      return "$";
    case Relation::Less:
      break;
  }
  return std::to_string(s.offset);
}

std::string format_signature(const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ' ';
    out += format_symbol(sig[i]);
  }
  return out;
}

SlidingSignature::SlidingSignature(std::span<const Value> chunk, const RefString& ref, Mode mode,
                                   DictBackend backend)
    : chunk_(chunk),
      m_(ref.size()),
      key_(descending_tie_keys(chunk)),
      pos_of_(chunk.size() + 1),
      window_keys_(chunk.size() + 1, backend),
      storage_(ref, initial_storage(chunk, ref.size(), mode), backend) {
  if (mode == Mode::Distinct) require_distinct(chunk, "text");
  for (std::size_t p = 1; p <= chunk_.size(); ++p) pos_of_[key_[p - 1]] = p;
  for (std::size_t p = 1; p <= m_; ++p) window_keys_.insert(key_[p - 1]);
}

SigSymbol SlidingSignature::symbol_at(std::size_t pos) const {
  const auto pred = window_keys_.pred_below(key_[pos - 1]);
  return pred ? link(chunk_, pos_of_[*pred], pos) : SigSymbol::none_min();
}

void SlidingSignature::advance() {
  if (!can_advance()) throw std::out_of_range("SlidingSignature::advance: past chunk end");
  const std::size_t leaving = start_;
  const std::size_t arriving = start_ + m_;

  // The element above the departing one inherits its predecessor.
  const std::size_t old_key = key_[leaving - 1];
  window_keys_.erase(old_key);
  if (auto above = window_keys_.succ_above(old_key)) refresh(pos_of_[*above]);

  // The arriving element gets its own symbol and becomes the predecessor
  // of the element directly above it.
  const std::size_t new_key = key_[arriving - 1];
  window_keys_.insert(new_key);
  refresh(arriving);
  if (auto above = window_keys_.succ_above(new_key)) refresh(pos_of_[*above]);

  ++start_;
}

Signature SlidingSignature::window_signature() const {
  const std::vector<Symbol> codes = storage_.window(start_, m_);
  Signature sig(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) sig[i] = SigSymbol::from_code(codes[i]);
  return sig;
}

}  // namespace opmk
