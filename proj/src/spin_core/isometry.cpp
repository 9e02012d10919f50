#include <cmath>
#include <stdexcept>
#include <string>

#include "rotinv/errors.hpp"
#include "rotinv/spin_core.hpp"

namespace rotinv {
namespace {

// Multiplet |j, m⟩ for m = j, j−1, …, −j (index μ = (2j − 2m)/2).
using Multiplet = std::vector<Vector>;

void extend_paths(int r, int target, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  const int k = int(prefix.size());
  if (k == r) {
    if (prefix.back() == target) out.push_back(prefix);
    return;
  }
  const int last = prefix.back();
  for (int next : {last - 1, last + 1}) {
    if (next < 0) continue;
    if (std::abs(next - target) > r - k - 1) continue;
    prefix.push_back(next);
    extend_paths(r, target, prefix, out);
    prefix.pop_back();
  }
}

// Couples a multiplet of spin j1 (on the qubits so far) with one more qubit
// appended as the least significant bit, yielding total spin j1 ± 1/2.
Multiplet couple_qubit(const Multiplet& in, int twice_j1, int twice_j) {
  const Index dim = in.front().size();
  Multiplet out(std::size_t(twice_j + 1), Vector::Zero(2 * dim));
  const bool up = twice_j == twice_j1 + 1;
  for (int mu = 0; mu <= twice_j; ++mu) {
    const int tm = twice_j - 2 * mu;
    double a = 0.0;  // weight of |j1, m−½⟩|↑⟩
    double b = 0.0;  // weight of |j1, m+½⟩|↓⟩
    if (up) {
      a = std::sqrt(double(twice_j + tm) / (2.0 * twice_j));
      b = std::sqrt(double(twice_j - tm) / (2.0 * twice_j));
    } else {
      a = -std::sqrt(double(twice_j1 - tm + 1) / (2.0 * (twice_j1 + 1)));
      b = std::sqrt(double(twice_j1 + tm + 1) / (2.0 * (twice_j1 + 1)));
    }
    Vector& v = out[std::size_t(mu)];
    if (std::abs(tm - 1) <= twice_j1) {
      const Vector& src = in[std::size_t((twice_j1 - (tm - 1)) / 2)];
      for (Index i = 0; i < dim; ++i) v(2 * i) += a * src(i);
    }
    if (std::abs(tm + 1) <= twice_j1) {
      const Vector& src = in[std::size_t((twice_j1 - (tm + 1)) / 2)];
      for (Index i = 0; i < dim; ++i) v(2 * i + 1) += b * src(i);
    }
  }
  return out;
}

Multiplet multiplet_for_path(const std::vector<int>& path) {
  Multiplet current(2, Vector::Zero(2));
  current[0](0) = 1.0;  // |½, ½⟩ = |0⟩
  current[1](1) = 1.0;  // |½, −½⟩ = |1⟩
  for (std::size_t k = 1; k < path.size(); ++k) current = couple_qubit(current, path[k - 1], path[k]);
  return current;
}

void check_request(int r, HalfInteger j, int d) {
  if (r < 1 || r > kMaxDenseQubits) {
    throw CapacityError("isometry on " + std::to_string(r) + " qubits is outside 1.." +
                        std::to_string(kMaxDenseQubits));
  }
  require_admissible_spin(r, j);
  const std::uint64_t mult = catalan_multiplicity(r, j);
  if (d < 1 || std::uint64_t(d) > mult) {
    throw std::invalid_argument("logical dimension " + std::to_string(d) + " does not fit the j=" +
                                j.to_string() + " subsystem of " + std::to_string(r) +
                                " qubits (multiplicity " + std::to_string(mult) + ")");
  }
}

}  // namespace

std::vector<std::vector<int>> coupling_paths(int r, HalfInteger j) {
  require_admissible_spin(r, j);
  std::vector<std::vector<int>> out;
  if (r < 1) return out;
  std::vector<int> prefix{1};
  extend_paths(r, j.twice(), prefix, out);
  return out;
}

std::vector<Matrix> subsystem_frames(int r, HalfInteger j, int d) {
  check_request(r, j, d);
  const auto paths = coupling_paths(r, j);
  const Index dim = Index{1} << r;
  std::vector<Matrix> frames(std::size_t(j.twice() + 1), Matrix(dim, d));
  for (int l = 0; l < d; ++l) {
    const Multiplet mp = multiplet_for_path(paths[std::size_t(l)]);
    for (std::size_t mu = 0; mu < frames.size(); ++mu) frames[mu].col(l) = mp[mu];
  }
  return frames;
}

EncodingMap subsystem_isometry(int r, HalfInteger j, int d) {
  auto frames = subsystem_frames(r, j, d);
  return EncodingMap{r, j, d, std::move(frames.front())};
}

}  // namespace rotinv
