#include "rotinv/tri_flags.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "rotinv/errors.hpp"
#include "rotinv/ri_encode.hpp"
#include "rotinv/spin_core.hpp"

namespace rotinv {

const char* to_string(FlagVariant v) {
  switch (v) {
    case FlagVariant::general: return "general";
    case FlagVariant::improved: return "improved";
    case FlagVariant::small_r: return "small_r";
  }
  return "unknown";
}

FlagVariant flag_variant_from_string(const std::string& name) {
  if (name == "general") return FlagVariant::general;
  if (name == "improved") return FlagVariant::improved;
  if (name == "small_r") return FlagVariant::small_r;
  throw std::invalid_argument("unknown flag variant '" + name + "'");
}

FlagSpec make_flag_spec(int r, HalfInteger j, FlagVariant variant) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  require_admissible_spin(r, j);
  FlagSpec spec;
  spec.r = r;
  spec.j = j;
  spec.variant = variant;
  switch (variant) {
    case FlagVariant::general:
      spec.m = std::max(r - 1, 5);
      break;
    case FlagVariant::improved:
      // r/2 ≥ j + 6  ⇔  r ≥ 2j + 12
      if (r < j.twice() + 12) {
        throw std::invalid_argument("improved flag needs r/2 >= j + 6 (r=" + std::to_string(r) + ", j=" +
                                    j.to_string() + ")");
      }
      spec.m = (r + j.twice()) / 2 + 1;
      break;
    case FlagVariant::small_r:
      if (r != 3 && r != 4) throw std::invalid_argument("small_r flag needs r in {3, 4}");
      spec.m = r + 1;
      break;
  }
  spec.flag_length = 6 + spec.m;
  return spec;
}

std::string ProjectorFactor::name() const {
  std::string s = "P^{" + std::to_string(support.size()) + "," + spin.to_string() + "}{";
  for (std::size_t i = 0; i < support.size(); ++i) s += (i ? "," : "") + std::to_string(support[i]);
  return s + "}";
}

std::vector<ProjectorFactor> flag_factors(const FlagSpec& spec) {
  const HalfInteger singlet = HalfInteger::from_integer(0);
  const HalfInteger triplet = HalfInteger::from_integer(1);
  std::vector<ProjectorFactor> f;
  if (spec.variant == FlagVariant::small_r) {
    f.push_back({{0, 2}, triplet});
    f.push_back({{1, 3}, singlet});
  } else {
    f.push_back({{0, 2}, singlet});
    f.push_back({{1, 3}, triplet});
  }
  f.push_back({{4, 5}, singlet});
  std::vector<int> block;
  for (int q = 0; q < spec.m; ++q) block.push_back(6 + q);
  f.push_back({block, HalfInteger::from_twice(spec.m)});
  return f;
}

FlagProjector flag_projector(const FlagSpec& spec) {
  const int f = spec.flag_length;
  if (f > 20) throw CapacityError("flag projector on " + std::to_string(f) + " qubits exceeds the cap of 20");
  SparseOperator p = SparseOperator::identity(Index{1} << f);
  for (const auto& factor : flag_factors(spec)) {
    const DenseOperator local = total_spin_projector(int(factor.support.size()), factor.spin);
    p = p * embed_on_support(local, factor.support, f);
  }
  FlagProjector out{spec, std::move(p), 0};
  out.rank = std::uint64_t(std::llround(out.op.matrix().diagonal().sum().real()));
  return out;
}

namespace {

struct PlacedFactor {
  std::vector<int> support;  // window positions
  HalfInteger spin;
  std::string label;
};

std::vector<PlacedFactor> place_flag(const FlagSpec& spec, int shift, const std::string& tag) {
  std::vector<PlacedFactor> out;
  for (const auto& f : flag_factors(spec)) {
    PlacedFactor p{f.support, f.spin, ""};
    for (int& s : p.support) s += shift;
    p.label = tag + ":" + ProjectorFactor{p.support, p.spin}.name();
    out.push_back(std::move(p));
  }
  return out;
}

bool overlaps(const PlacedFactor& a, const PlacedFactor& b) {
  for (int s : a.support) {
    if (std::find(b.support.begin(), b.support.end(), s) != b.support.end()) return true;
  }
  return false;
}

// ‖a·b‖_max on the union of supports, relabelled to 0..u−1. Results are
// memoized on the relative geometry.
double pair_residual(const PlacedFactor& a, const PlacedFactor& b,
                     std::map<std::tuple<std::vector<int>, int, std::vector<int>, int>, double>& cache) {
  std::vector<int> all = a.support;
  all.insert(all.end(), b.support.begin(), b.support.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  auto relabel = [&](const std::vector<int>& s) {
    std::vector<int> out;
    for (int x : s) out.push_back(int(std::lower_bound(all.begin(), all.end(), x) - all.begin()));
    return out;
  };
  const auto sa = relabel(a.support);
  const auto sb = relabel(b.support);
  const auto key = std::make_tuple(sa, a.spin.twice(), sb, b.spin.twice());
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const double res = embedded_product_residual(total_spin_projector(int(sa.size()), a.spin), sa,
                                               total_spin_projector(int(sb.size()), b.spin), sb, int(all.size()));
  cache.emplace(key, res);
  return res;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::vector<InvarianceReport> verify_flag_overlaps(const FlagSpec& spec, double tolerance) {
  const int f = spec.flag_length;
  const int r = spec.r;
  std::vector<PlacedFactor> state = place_flag(spec, 0, "A");
  {
    PlacedFactor e{{}, spec.j, ""};
    for (int q = 0; q < r; ++q) e.support.push_back(f + q);
    e.label = "E:" + ProjectorFactor{e.support, e.spin}.name();
    state.push_back(std::move(e));
  }
  for (auto& p : place_flag(spec, f + r, "B")) state.push_back(std::move(p));

  std::map<std::tuple<std::vector<int>, int, std::vector<int>, int>, double> cache;
  std::vector<InvarianceReport> reports;
  for (int n = 1; n <= r + f - 1; ++n) {
    InvarianceReport rep;
    rep.check_name = "flag_overlap(n=" + std::to_string(n) + ")";
    rep.tolerance = tolerance;
    rep.residual = std::numeric_limits<double>::infinity();
    std::string witness;
    for (const auto& c : place_flag(spec, n, "C")) {
      for (const auto& s : state) {
        if (!overlaps(c, s)) continue;
        const double res = pair_residual(c, s, cache);
        if (res < rep.residual) {
          rep.residual = res;
          witness = c.label + " * " + s.label;
        }
      }
    }
    rep.passed = rep.residual <= tolerance;
    rep.details = rep.passed ? "annihilated by " + witness + " (residual " + sci(rep.residual) + ")"
                             : "construction failure: no annihilating factor pair at offset " + std::to_string(n) +
                                   " (best " + witness + ", residual " + sci(rep.residual) + ")";
    reports.push_back(std::move(rep));
  }
  return reports;
}

int body_size(int k, const FlagSpec& spec) { return k * (spec.flag_length + spec.r); }

std::uint64_t degeneracy_count(const FlagSpec& spec, int n_logical) {
  if (n_logical < 0) throw std::invalid_argument("N must be non-negative");
  std::uint64_t out = std::uint64_t(spec.flag_length + spec.r);
  const std::uint64_t per_flag = 3 * std::uint64_t(spec.m + 1);
  for (int i = 0; i < n_logical; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / per_flag) throw CapacityError("degeneracy count overflows");
    out *= per_flag;
  }
  return out;
}

SpinChainHamiltonian build_tri_hamiltonian(const LocalTerm& h, int local_dim, const FlagSpec& spec, int n_logical) {
  const int k = int(h.support.size());
  const int f = spec.flag_length;
  const int r = spec.r;
  const int cell = f + r;
  const int kp = body_size(k, spec);
  if (k < 1) throw std::invalid_argument("term needs a support");
  for (int i = 0; i < k; ++i) {
    if (h.support[std::size_t(i)] != i) throw std::invalid_argument("term support must be 0..k-1");
  }
  if (n_logical < k) throw std::invalid_argument("need at least k logical sites on the ring");
  if (std::uint64_t(local_dim) > catalan_multiplicity(r, spec.j)) {
    throw std::invalid_argument("local dimension exceeds the multiplicity of the chosen sector");
  }
  if (kp > 20) throw CapacityError("flag-conditioned term on " + std::to_string(kp) + " qubits exceeds the cap of 20");

  const RiEncoding enc = make_encoding(r, spec.j, local_dim, 0.0);
  const DenseOperator lifted(lift_operator(h.matrix.to_dense(), k, enc));
  const double hnorm = operator_norm(lifted);
  const double jprime = hnorm > 0.0 ? 2.0 * kp * hnorm : 1.0;

  const FlagProjector flag = flag_projector(spec);
  std::vector<int> encoded_sites;
  SparseOperator flags = SparseOperator::identity(Index{1} << kp);
  for (int i = 0; i < k; ++i) {
    std::vector<int> fs;
    for (int q = 0; q < f; ++q) fs.push_back(i * cell + q);
    for (int q = 0; q < r; ++q) encoded_sites.push_back(i * cell + f + q);
    flags = flags * embed_on_support(flag.op, fs, kp);
  }
  const SparseOperator conditioned = flags * embed_on_support(lifted, encoded_sites, kp);

  // J'(1 − P^F ⊗ P^{r,j}) on one cell
  std::vector<int> block_sites;
  for (int q = 0; q < r; ++q) block_sites.push_back(f + q);
  std::vector<int> flag_sites;
  for (int q = 0; q < f; ++q) flag_sites.push_back(q);
  const SparseOperator aligned = embed_on_support(flag.op, flag_sites, cell) *
                                 embed_on_support(total_spin_projector(r, spec.j), block_sites, cell);
  const SparseOperator penalty = Complex(jprime) * (SparseOperator::identity(Index{1} << cell) - aligned);

  SpinChainHamiltonian out;
  out.n_sites = n_logical * cell;
  out.local_dim = 2;
  out.boundary = Boundary::periodic;
  out.label = std::string("tri_encoded(r=") + std::to_string(r) + ", j=" + spec.j.to_string() + ", variant=" +
              to_string(spec.variant) + ", N=" + std::to_string(n_logical) + ")";
  for (int p = 0; p < out.n_sites; ++p) {
    std::vector<int> term_sites, pen_sites;
    for (int q = 0; q < kp; ++q) term_sites.push_back((p + q) % out.n_sites);
    for (int q = 0; q < cell; ++q) pen_sites.push_back((p + q) % out.n_sites);
    out.terms.push_back({std::move(term_sites), conditioned});
    out.terms.push_back({std::move(pen_sites), penalty});
  }
  out.metadata["k_prime"] = kp;
  out.metadata["J_prime"] = jprime;
  out.metadata["penalty_offset"] = jprime * n_logical * (cell - 1);
  out.metadata["F"] = f;
  out.metadata["m"] = spec.m;
  out.metadata["r"] = r;
  out.metadata["twice_j"] = spec.j.twice();
  out.metadata["N"] = n_logical;
  return out;
}

}  // namespace rotinv

namespace rotinv {

nlohmann::ordered_json flag_spec_to_json(const FlagSpec& spec) {
  nlohmann::ordered_json j;
  j["r"] = spec.r;
  j["twice_j"] = spec.j.twice();
  j["m"] = spec.m;
  j["F"] = spec.flag_length;
  j["variant"] = to_string(spec.variant);
  return j;
}

FlagSpec flag_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  auto integer = [&](const char* key) {
    const std::string p = std::string("/") + key;
    if (!j.contains(key)) throw SchemaError(p, "missing field");
    if (!j[key].is_number_integer()) throw SchemaError(p, "expected an integer");
    return j[key].get<int>();
  };
  const int r = integer("r");
  const int twice_j = integer("twice_j");
  const int m = integer("m");
  const int f = integer("F");
  if (!j.contains("variant") || !j["variant"].is_string()) throw SchemaError("/variant", "expected a string");
  FlagSpec spec;
  try {
    spec = make_flag_spec(r, HalfInteger::from_twice(twice_j), flag_variant_from_string(j["variant"].get<std::string>()));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("", e.what());
  }
  if (spec.m != m) throw SchemaError("/m", "expected " + std::to_string(spec.m));
  if (spec.flag_length != f) throw SchemaError("/F", "expected " + std::to_string(spec.flag_length));
  return spec;
}

}  // namespace rotinv
