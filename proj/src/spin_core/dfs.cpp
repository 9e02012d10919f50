#include <algorithm>
#include <stdexcept>
#include <string>

#include "rotinv/spin_core.hpp"

namespace rotinv {

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(acc);
}

namespace {

// c^r_j for even r; twice_j may exceed r, where the binomial vanishes.
std::uint64_t catalan_even(int r, int twice_j) {
  const int lower = (r - twice_j) / 2;
  const std::uint64_t c = binomial(r, lower);
  if (c == 0) return 0;
  const unsigned __int128 num = static_cast<unsigned __int128>(c) * static_cast<unsigned>(twice_j + 1);
  const unsigned den = static_cast<unsigned>((r + twice_j) / 2 + 1);
  return static_cast<std::uint64_t>(num / den);
}

}  // namespace

std::uint64_t catalan_multiplicity(int r, HalfInteger j) {
  if (r < 0 || r > kMaxArithmeticQubits) {
    throw std::invalid_argument("qubit count out of range: " + std::to_string(r));
  }
  require_admissible_spin(r, j);
  if (r % 2 == 0) return catalan_even(r, j.twice());
  return catalan_even(r - 1, j.twice() - 1) + catalan_even(r - 1, j.twice() + 1);
}

std::uint64_t DfsDecomposition::total_dimension() const {
  std::uint64_t total = 0;
  for (const auto& s : sectors) total += s.dim_m * s.mult_n;
  return total;
}

DfsDecomposition decompose(int r) {
  if (r < 1 || r > kMaxArithmeticQubits) {
    throw std::invalid_argument("decompose needs 1 <= r <= " + std::to_string(kMaxArithmeticQubits) +
                                ", got " + std::to_string(r));
  }
  DfsDecomposition out;
  out.r = r;
  for (int twice_j = r % 2; twice_j <= r; twice_j += 2) {
    const HalfInteger j = HalfInteger::from_twice(twice_j);
    out.sectors.push_back({j, static_cast<std::uint64_t>(twice_j + 1), catalan_multiplicity(r, j)});
  }
  return out;
}

HalfInteger largest_multiplicity_spin(int r) {
  const auto dec = decompose(r);
  const DfsSector* best = &dec.sectors.front();
  for (const auto& s : dec.sectors) {
    if (s.mult_n > best->mult_n) best = &s;
  }
  return best->j;
}

}  // namespace rotinv
