#include <bit>
#include <cstdint>
#include <stdexcept>

#include "opmk/matcher.hpp"

namespace opmk {

bool k_isomorphic_subset_oracle(std::span<const Value> a, std::span<const Value> b, std::size_t k) {
  if (a.size() != b.size()) throw std::invalid_argument("subset oracle: length mismatch");
  const std::size_t m = a.size();
  if (m > kSubsetOracleLimit) throw std::invalid_argument("subset oracle: sequences too long");
  if (k >= m) return true;

  // compatible[i] has bit j set iff positions i and j relate the same way
  // (<, =, >) in both sequences.
  std::vector<std::uint32_t> compatible(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const int ra = (a[i] > a[j]) - (a[i] < a[j]);
      const int rb = (b[i] > b[j]) - (b[i] < b[j]);
      if (ra == rb) compatible[i] |= std::uint32_t{1} << j;
    }
  }

  // Removing more positions never breaks isomorphism, so it suffices to try
  // every removal set of size exactly k, i.e. every kept set of size m - k.
  const std::size_t keep = m - k;
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  for (std::uint32_t mask = (std::uint32_t{1} << keep) - 1; mask <= full && mask != 0;) {
    bool ok = true;
    for (std::uint32_t rest = mask; rest && ok; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      ok = (mask & ~compatible[i]) == 0;
    }
    if (ok) return true;
    // Next mask with the same popcount (Gosper).
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t ripple = mask + low;
    mask = ripple | (((mask ^ ripple) >> 2) / low);
  }
  return false;
}

}  // namespace opmk
