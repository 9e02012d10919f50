#include <algorithm>
#include <map>

#include "rotinv/ham_model.hpp"

namespace rotinv {

TermSumOperator::TermSumOperator(const SpinChainHamiltonian& h)
    : dim_(h.dimension()), local_dim_(std::uint64_t(h.local_dim)) {
  std::vector<std::uint64_t> stride(std::size_t(h.n_sites));
  std::uint64_t acc = 1;
  for (int site = h.n_sites - 1; site >= 0; --site) {
    stride[std::size_t(site)] = acc;
    acc *= local_dim_;
  }
  for (const auto& t : h.terms) {
    CompiledTerm ct;
    for (int s : t.support) ct.strides.push_back(stride[std::size_t(s)]);
    const Index local = t.matrix.dimension();
    ct.offsets.assign(std::size_t(local), 0);
    for (Index l = 0; l < local; ++l) {
      std::uint64_t rest = std::uint64_t(l);
      for (int i = int(ct.strides.size()) - 1; i >= 0; --i) {
        ct.offsets[std::size_t(l)] += (rest % local_dim_) * ct.strides[std::size_t(i)];
        rest /= local_dim_;
      }
    }
    ct.columns.resize(std::size_t(local));
    const SparseMatrix& m = t.matrix.matrix();
    for (Index r = 0; r < m.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
        ct.columns[std::size_t(it.col())].emplace_back(std::uint32_t(r), it.value());
      }
    }
    terms_.push_back(std::move(ct));
  }
}

void TermSumOperator::apply(const Complex* x, Complex* y) const {
  std::fill(y, y + dim_, Complex(0.0));
  for (const auto& t : terms_) {
    for (std::uint64_t g = 0; g < dim_; ++g) {
      if (x[g] == Complex(0.0)) continue;
      std::uint64_t col = 0;
      std::uint64_t base = g;
      for (std::uint64_t st : t.strides) {
        const std::uint64_t digit = (g / st) % local_dim_;
        col = col * local_dim_ + digit;
        base -= digit * st;
      }
      for (const auto& [row, v] : t.columns[col]) y[base + t.offsets[row]] += v * x[g];
    }
  }
}

Vector TermSumOperator::apply(const Vector& x) const {
  Vector y(static_cast<Index>(dim_));
  apply(x.data(), y.data());
  return y;
}

std::vector<std::pair<std::uint64_t, Complex>> TermSumOperator::column(std::uint64_t x) const {
  std::map<std::uint64_t, Complex> acc;
  for (const auto& t : terms_) {
    std::uint64_t col = 0;
    std::uint64_t base = x;
    for (std::uint64_t st : t.strides) {
      const std::uint64_t digit = (x / st) % local_dim_;
      col = col * local_dim_ + digit;
      base -= digit * st;
    }
    for (const auto& [row, v] : t.columns[col]) acc[base + t.offsets[row]] += v;
  }
  return {acc.begin(), acc.end()};
}

}  // namespace rotinv
