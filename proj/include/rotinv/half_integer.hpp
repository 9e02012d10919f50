#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace rotinv {

/// Spin label stored as twice its value, so 1/2 is held exactly as 1.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_integer(int value) { return HalfInteger(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  /// j(j+1), the Casimir eigenvalue of the label.
  constexpr double casimir() const { return 0.25 * twice_ * (twice_ + 2); }

  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// True when j is a total-spin value reachable by r spin-1/2 particles.
constexpr bool is_admissible_spin(int r, HalfInteger j) {
  return r >= 0 && j.twice() >= 0 && j.twice() <= r && (r - j.twice()) % 2 == 0;
}

inline void require_admissible_spin(int r, HalfInteger j) {
  if (!is_admissible_spin(r, j)) {
    throw std::invalid_argument("spin j=" + j.to_string() + " is not admissible for r=" +
                                std::to_string(r) + " qubits");
  }
}

}  // namespace rotinv
