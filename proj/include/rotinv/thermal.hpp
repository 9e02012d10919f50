#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rotinv/ham_model.hpp"
#include "rotinv/operators.hpp"

namespace rotinv {

/// log Σ exp(x_i) with max shift.
double log_sum_exp(std::span<const double> x);

/// log Tr exp(−βH) from the full dense spectrum.
double log_partition_function(const SparseOperator& h, double beta);

/// Tr(O e^{−βH}) / Tr(e^{−βH}).
double thermal_expectation(const SparseOperator& h, const SparseOperator& o, double beta);

struct ThermalResult {
  double beta = 0.0;
  double log_partition = 0.0;
  std::vector<std::pair<std::string, double>> expectations;
};

ThermalResult thermal_state_summary(const SparseOperator& h, double beta,
                                    const std::vector<std::pair<std::string, SparseOperator>>& observables);

/// [2cosh(Bβ) / (2cosh(Bβ) + 6e^{−βJ})]^N evaluated in log space.
double suppression_ratio_field_model(double b_field, double beta, double penalty, int n_sites);

/// H₁ = B Σ_i Z_i on an open chain of N qubits.
SpinChainHamiltonian field_model(double b_field, int n_sites);

/// N sites of dimension 8 with on-site term (B·Z) ⊕ (J·1₆).
SpinChainHamiltonian literal_direct_sum_field_model(double b_field, double penalty, int n_sites);

struct SweepPoint {
  int n_sites = 0;
  double log_z1 = 0.0;
  double log_z2 = 0.0;
  double ratio = 0.0;  // Z₁/Z₂
};

struct SuppressionSweep {
  double beta = 0.0;
  std::vector<SweepPoint> points;
  bool strictly_decreasing = false;
};

/// Exact Z₁/Z₂ for each N; `instance(N)` returns (H₁, H₂) assembled.
SuppressionSweep suppression_sweep(const std::function<std::pair<SparseOperator, SparseOperator>(int)>& instance,
                                   double beta, std::span<const int> n_list);

}  // namespace rotinv
