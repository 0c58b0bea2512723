#include "formexp/koszul.hpp"

#include <stdexcept>
#include <vector>

namespace formexp {

int koszul_sign(std::span<const int> perm, std::span<const int> degrees) {
  const std::size_t n = perm.size();
  if (degrees.size() != n) throw std::invalid_argument("permutation and degree list differ in length");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  int parity = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      int pa = perm[a], pb = perm[b];
      if (pa > pb && (degrees[static_cast<std::size_t>(pa)] % 2 != 0) && (degrees[static_cast<std::size_t>(pb)] % 2 != 0))
        parity ^= 1;
    }
  return parity ? -1 : 1;
}

}  // namespace formexp
