// rotinv-cli: build, encode and verify rotation- and translation-invariant
// spin Hamiltonians from the command line.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or schema error,
// 3 capacity exceeded.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rotinv/errors.hpp"
#include "rotinv/ham_json.hpp"
#include "rotinv/ri_encode.hpp"
#include "rotinv/spectral.hpp"
#include "rotinv/spin_core.hpp"
#include "rotinv/thermal.hpp"
#include "rotinv/tri_flags.hpp"
#include "rotinv/version.hpp"

using namespace rotinv;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  bool json = false;

  double tolerance(double fallback) const { return tol.value_or(fallback); }
};

// Raised for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json header(const Globals& g, const char* command) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = g.seed;
  return j;
}

Json report_json(const InvarianceReport& r) {
  Json j;
  j["check"] = r.check_name;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["estimator"] = to_string(r.estimator);
  j["samples"] = r.samples;
  j["details"] = r.details;
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Prints the report (JSON or text lines) and mirrors it to --out when the
// command has no other artifact.
void emit(const Globals& g, const Json& report, const std::vector<std::string>& text, bool report_is_artifact) {
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& line : text) std::cout << line << "\n";
  }
  if (report_is_artifact && !g.out.empty()) write_json_file(g.out, report);
}

HalfInteger spin_arg(int r, std::optional<int> twice_j) {
  const HalfInteger j = HalfInteger::from_twice(twice_j.value_or(r % 2));
  require_admissible_spin(r, j);
  return j;
}

// ---------------------------------------------------------------------------

struct DecomposeArgs {
  int r = 0;
};

int cmd_decompose(const Globals& g, const DecomposeArgs& a) {
  const DfsDecomposition d = decompose(a.r);
  Json rep = header(g, "decompose");
  rep["r"] = a.r;
  Json rows = Json::array();
  std::vector<std::string> text = {"j      dim_m  mult_n"};
  for (const auto& s : d.sectors) {
    Json row;
    row["j"] = s.j.to_string();
    row["twice_j"] = s.j.twice();
    row["dim_m"] = s.dim_m;
    row["mult_n"] = s.mult_n;
    rows.push_back(row);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-6s %-6llu %llu", s.j.to_string().c_str(), (unsigned long long)s.dim_m,
                  (unsigned long long)s.mult_n);
    text.emplace_back(buf);
  }
  rep["sectors"] = rows;
  rep["checksum"] = d.total_dimension();
  rep["largest_multiplicity_j"] = largest_multiplicity_spin(a.r).to_string();
  text.push_back("checksum " + std::to_string(d.total_dimension()));
  emit(g, rep, text, true);
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct ProjectorArgs {
  int r = 0;
  std::optional<int> twice_j;
};

int cmd_projector(const Globals& g, const ProjectorArgs& a) {
  const HalfInteger j = spin_arg(a.r, a.twice_j);
  if (a.r > kMaxDenseQubits) throw CapacityError("projector on " + std::to_string(a.r) + " qubits exceeds the dense cap");
  const DenseOperator p = total_spin_projector(a.r, j);
  const double tol = g.tolerance(kDerivedTol);
  const Matrix& m = p.matrix();
  const double idem = max_abs(Matrix(m * m - m));
  const double herm = p.hermiticity_residual();
  double ri = 0.0;
  const SparseOperator ps = p.to_sparse();
  for (const auto& gen : collective_generators(a.r)) ri = std::max(ri, (ps * gen - gen * ps).max_abs());
  const double trace = m.trace().real();
  const std::uint64_t expected = std::uint64_t(j.twice() + 1) * catalan_multiplicity(a.r, j);
  const bool ok = idem <= tol && herm <= kDirectTol && ri <= tol && std::llround(trace) == (long long)expected;

  Json rep = header(g, "projector");
  rep["r"] = a.r;
  rep["twice_j"] = j.twice();
  rep["trace"] = trace;
  rep["expected_trace"] = expected;
  rep["idempotence_residual"] = idem;
  rep["hermiticity_residual"] = herm;
  rep["rotation_residual"] = ri;
  rep["tolerance"] = tol;
  rep["passed"] = ok;
  if (!g.out.empty()) {
    Json file;
    file["schema_version"] = kReportSchemaVersion;
    file["r"] = a.r;
    file["twice_j"] = j.twice();
    file["matrix"] = complex_matrix_to_json(m);
    write_json_file(g.out, file);
  }
  emit(g, rep,
       {"P^{" + std::to_string(a.r) + "," + j.to_string() + "}: trace " + fmt(trace) + " (expected " +
            std::to_string(expected) + ")",
        "idempotence " + fmt(idem) + ", hermiticity " + fmt(herm) + ", rotation " + fmt(ri),
        ok ? "PASS" : "FAIL"},
       false);
  return ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

struct EncodeArgs {
  std::string input;
  int r = 0;
  std::optional<int> twice_j;
  std::optional<double> penalty;
  std::string encoding_out;
};

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const std::string ext = ".json";
  if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return path.substr(0, path.size() - ext.size()) + suffix;
  }
  return path + suffix;
}

int cmd_encode(const Globals& g, const EncodeArgs& a) {
  if (g.out.empty()) throw UsageError("encode needs --out for the encoded Hamiltonian");
  const SpinChainHamiltonian h1 = load_hamiltonian(a.input);
  const HalfInteger j = spin_arg(a.r, a.twice_j);
  const EncodedHamiltonian enc = encode_hamiltonian(h1, a.r, j, a.penalty);
  const std::string enc_path = a.encoding_out.empty() ? sibling_path(g.out, ".encoding.json") : a.encoding_out;
  save_hamiltonian(g.out, enc.h2);
  write_json_file(enc_path, encoding_to_json(enc.encoding));

  Json rep = header(g, "encode");
  rep["input"] = h1.label;
  rep["r"] = a.r;
  rep["twice_j"] = j.twice();
  rep["d"] = h1.local_dim;
  rep["k"] = h1.locality();
  rep["k_prime"] = enc.h2.metadata.at("k_prime");
  rep["J"] = enc.encoding.penalty_strength;
  rep["qubits"] = enc.h2.n_sites;
  rep["terms"] = enc.h2.terms.size();
  rep["hamiltonian_file"] = g.out;
  rep["encoding_file"] = enc_path;
  emit(g, rep,
       {"encoded " + std::to_string(h1.n_sites) + " sites into " + std::to_string(enc.h2.n_sites) + " qubits",
        "k' = " + fmt(enc.h2.metadata.at("k_prime")) + ", J = " + fmt(enc.encoding.penalty_strength),
        "wrote " + g.out + " and " + enc_path},
       false);
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct FlagsArgs {
  int r = 0;
  std::optional<int> twice_j;
  std::string variant = "general";
  int k = 2;
};

FlagSpec spec_from_args(int r, std::optional<int> twice_j, const std::string& variant_name) {
  const FlagVariant variant = flag_variant_from_string(variant_name);
  if (twice_j || variant != FlagVariant::improved) return make_flag_spec(r, spin_arg(r, twice_j), variant);
  // improved without an explicit j: the smallest admissible j meeting r/2 ≥ j+6
  for (int tj = r % 2; tj <= r; tj += 2) {
    if (r >= tj + 12) return make_flag_spec(r, HalfInteger::from_twice(tj), variant);
  }
  throw std::invalid_argument("improved flag: premise r/2 >= j + 6 unmet for every admissible j at r=" +
                              std::to_string(r));
}

int cmd_flags(const Globals& g, const FlagsArgs& a) {
  const FlagSpec spec = spec_from_args(a.r, a.twice_j, a.variant);
  const double tol = g.tolerance(kDerivedTol);
  const auto reports = verify_flag_overlaps(spec, tol);
  int annihilated = 0;
  Json overlaps = Json::array();
  for (const auto& r : reports) {
    annihilated += r.passed;
    overlaps.push_back(report_json(r));
  }
  const FlagProjector fp = flag_projector(spec);

  Json rep = header(g, "flags");
  rep["spec"] = flag_spec_to_json(spec);
  rep["rank"] = fp.rank;
  rep["expected_rank"] = 3 * (spec.m + 1);
  rep["offsets"] = reports.size();
  rep["annihilated"] = annihilated;
  rep["overlaps"] = overlaps;
  rep["k"] = a.k;
  rep["k_prime"] = body_size(a.k, spec);
  rep["degeneracy_count_N1"] = degeneracy_count(spec, 1);
  const bool ok = annihilated == int(reports.size()) && fp.rank == std::uint64_t(3 * (spec.m + 1));
  rep["passed"] = ok;

  std::vector<std::string> text = {
      "r=" + std::to_string(spec.r) + " j=" + spec.j.to_string() + " variant=" + to_string(spec.variant) +
          ": m=" + std::to_string(spec.m) + ", F=" + std::to_string(spec.flag_length),
      "rank(P^F) = " + std::to_string(fp.rank),
      std::to_string(annihilated) + "/" + std::to_string(reports.size()) + " offsets annihilated"};
  for (const auto& r : reports)
    if (!r.passed) text.push_back("  " + r.check_name + ": " + r.details);
  text.push_back("k' for k=" + std::to_string(a.k) + ": " + std::to_string(body_size(a.k, spec)));
  text.emplace_back(ok ? "PASS" : "FAIL");
  emit(g, rep, text, true);
  return ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

struct BuildTriArgs {
  std::string input;
  int r = 0;
  std::optional<int> twice_j;
  std::string variant = "general";
  int n = 1;
};

int cmd_build_tri(const Globals& g, const BuildTriArgs& a) {
  if (g.out.empty()) throw UsageError("build-tri needs --out for the assembled Hamiltonian");
  const SpinChainHamiltonian h1 = load_hamiltonian(a.input);
  if (h1.terms.size() != 1) throw SchemaError("/terms", "build-tri takes exactly one generating term");
  const FlagSpec spec = spec_from_args(a.r, a.twice_j, a.variant);
  const SpinChainHamiltonian h2 = build_tri_hamiltonian(h1.terms[0], h1.local_dim, spec, a.n);
  save_hamiltonian(g.out, h2);

  Json rep = header(g, "build-tri");
  rep["spec"] = flag_spec_to_json(spec);
  rep["N"] = a.n;
  rep["qubits"] = h2.n_sites;
  rep["terms"] = h2.terms.size();
  for (const char* key : {"k_prime", "J_prime", "penalty_offset"}) rep[key] = h2.metadata.at(key);
  const std::uint64_t formula_count = degeneracy_count(spec, a.n);
  rep["degeneracy_count"] = formula_count;
  rep["degeneracy_count_with_m_factor"] = formula_count * std::uint64_t(std::pow(spec.j.twice() + 1, a.n));
  rep["hamiltonian_file"] = g.out;
  emit(g, rep,
       {"assembled " + std::to_string(h2.n_sites) + " qubits, " + std::to_string(h2.terms.size()) + " terms",
        "k' = " + fmt(h2.metadata.at("k_prime")) + ", J' = " + fmt(h2.metadata.at("J_prime")) +
            ", penalty offset = " + fmt(h2.metadata.at("penalty_offset")),
        "wrote " + g.out},
       false);
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string input;
  std::vector<std::string> checks;
  int period = 1;
  std::string reference;
  int samples = 64;
  int rotations = 4;
};

double metadata_or(const SpinChainHamiltonian& h, const char* key, double fallback) {
  const auto it = h.metadata.find(key);
  return it == h.metadata.end() ? fallback : it->second;
}

SpectralResult lowest_levels(const SparseOperator& h, std::uint64_t seed) {
  if (h.dimension() <= kMaxDenseSpectrumDimension) return eigensolve(h, 0, SolverMethod::dense, seed);
  return eigensolve(h, 3, SolverMethod::iterative, seed);
}

InvarianceReport spectrum_check(const Globals& g, const SpinChainHamiltonian& h, const std::string& reference) {
  InvarianceReport rep;
  rep.check_name = "spectrum";
  rep.tolerance = g.tolerance(1e-8);
  const SpectralResult s = lowest_levels(build_global(h), g.seed);
  const double offset = metadata_or(h, "penalty_offset", 0.0);
  std::ostringstream d;
  d.precision(17);
  d << "E0=" << s.ground_energy << " gap=" << s.gap << " ground_degeneracy=" << s.degeneracies.front().count
    << " method=" << to_string(s.method);
  if (offset != 0.0) d << " penalty_offset=" << offset;
  if (reference.empty()) {
    rep.residual = 0.0;
  } else {
    const SpinChainHamiltonian ref = load_hamiltonian(reference);
    const SpectralResult r = lowest_levels(build_global(ref), g.seed);
    rep.residual = std::abs((s.ground_energy - offset) - r.ground_energy);
    d << " reference_E0=" << r.ground_energy << " reference_gap=" << r.gap;
  }
  rep.passed = rep.residual <= rep.tolerance;
  rep.details = d.str();
  return rep;
}

FlagSpec spec_from_metadata(const SpinChainHamiltonian& h) {
  for (const char* key : {"r", "twice_j", "m"})
    if (!h.metadata.count(key)) throw SchemaError("/metadata/" + std::string(key), "flags check needs r, twice_j and m");
  const int r = int(h.metadata.at("r"));
  const HalfInteger j = HalfInteger::from_twice(int(h.metadata.at("twice_j")));
  const int m = int(h.metadata.at("m"));
  for (FlagVariant v : {FlagVariant::small_r, FlagVariant::improved, FlagVariant::general}) {
    try {
      const FlagSpec s = make_flag_spec(r, j, v);
      if (s.m == m) return s;
    } catch (const std::invalid_argument&) {
    }
  }
  throw SchemaError("/metadata/m", "no flag variant yields m=" + std::to_string(m));
}

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  const SpinChainHamiltonian h = load_hamiltonian(a.input);
  Json checks = Json::array();
  Json rep = header(g, "verify");
  rep["input"] = h.label;
  std::vector<std::string> text;
  bool all = true;
  for (const auto& name : a.checks) {
    InvarianceReport r;
    if (name == "ri") {
      r = is_rotation_invariant(h, a.rotations, g.seed, g.tolerance(kDerivedTol));
    } else if (name == "ti") {
      r = is_translation_invariant(h, a.period, g.tolerance(kDerivedTol), g.seed, a.samples);
    } else if (name == "spectrum") {
      r = spectrum_check(g, h, a.reference);
    } else {  // flags
      const FlagSpec spec = spec_from_metadata(h);
      const auto overlaps = verify_flag_overlaps(spec, g.tolerance(kDerivedTol));
      r.check_name = "flags";
      r.tolerance = g.tolerance(kDerivedTol);
      int ok = 0;
      for (const auto& o : overlaps) {
        r.residual = std::max(r.residual, o.residual);
        ok += o.passed;
      }
      r.passed = ok == int(overlaps.size());
      r.details = std::to_string(ok) + "/" + std::to_string(overlaps.size()) + " offsets annihilated";
      r.samples = int(overlaps.size());
    }
    all = all && r.passed;
    checks.push_back(report_json(r));
    text.push_back(std::string(r.passed ? "PASS " : "FAIL ") + r.check_name + " residual=" + fmt(r.residual) +
                   " tol=" + fmt(r.tolerance) + " (" + r.details + ")");
  }
  rep["checks"] = checks;
  rep["passed"] = all;
  emit(g, rep, text, true);
  return all ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string input;
  int count = 0;
  std::string method = "auto";
};

int cmd_spectrum(const Globals& g, const SpectrumArgs& a) {
  const SpinChainHamiltonian h = load_hamiltonian(a.input);
  const SparseOperator op = build_global(h);
  SolverMethod method = SolverMethod::dense;
  if (a.method == "iterative" || (a.method == "auto" && op.dimension() > kMaxDenseSpectrumDimension))
    method = SolverMethod::iterative;
  const int count = method == SolverMethod::iterative && a.count <= 0 ? 3 : a.count;
  SpectralResult s = eigensolve(op, count, method, g.seed);
  if (method == SolverMethod::dense && count > 0 && std::size_t(count) < s.eigenvalues.size())
    s.eigenvalues.resize(std::size_t(count));

  Json rep = header(g, "spectrum");
  rep["input"] = h.label;
  rep["dimension"] = op.dimension();
  rep["method"] = to_string(s.method);
  rep["ground_energy"] = s.ground_energy;
  rep["gap"] = s.gap;
  Json levels = Json::array();
  for (const auto& l : s.degeneracies) levels.push_back(Json::array({l.energy, l.count}));
  rep["degeneracies"] = levels;
  rep["eigenvalues"] = s.eigenvalues;
  rep["iterations"] = s.iterations;
  rep["max_residual"] = s.max_residual;
  if (const auto it = h.metadata.find("penalty_offset"); it != h.metadata.end()) {
    rep["penalty_offset"] = it->second;
    rep["shifted_ground_energy"] = s.ground_energy - it->second;
  }
  std::vector<std::string> text = {"E0 = " + fmt(s.ground_energy) + "  gap = " + fmt(s.gap) + "  (" +
                                   to_string(s.method) + ")"};
  for (std::size_t i = 0; i < std::min<std::size_t>(s.degeneracies.size(), 5); ++i)
    text.push_back("  " + fmt(s.degeneracies[i].energy) + " x" + std::to_string(s.degeneracies[i].count));
  emit(g, rep, text, true);
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct DynamicsArgs {
  std::string h1;
  std::string encoding;
  std::vector<double> times = {0.1, 1.0, 3.7};
  int states = 10;
};

Vector random_state(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v.normalized();
}

int cmd_dynamics(const Globals& g, const DynamicsArgs& a) {
  const SpinChainHamiltonian h1 = load_hamiltonian(a.h1);
  const RiEncoding enc = encoding_from_json(read_json_file(a.encoding));
  if (enc.logical_dim != h1.local_dim)
    throw SchemaError("/d", "encoding has d=" + std::to_string(enc.logical_dim) + " but the Hamiltonian has local_dim=" +
                                std::to_string(h1.local_dim));
  const EncodedHamiltonian e = encode_hamiltonian(h1, enc.r, enc.j, enc.penalty_strength);
  const SparseOperator g1 = build_global(h1);
  const SparseOperator g2 = build_global(e.h2);
  const double tol = g.tolerance(1e-8);

  std::mt19937_64 rng(g.seed);
  std::vector<double> worst(a.times.size(), 0.0);
  double leakage = 0.0;
  for (int s = 0; s < a.states; ++s) {
    const Vector psi = random_state(g1.dimension(), rng);
    const Vector big = encode_state(psi, enc, h1.n_sites);
    const auto exact = evolve_dense_many(g1, psi, a.times);
    for (std::size_t k = 0; k < a.times.size(); ++k) {
      const DecodedState dec = decode_state(evolve(g2, big, a.times[k]), enc, h1.n_sites);
      // decode renormalizes; compare including the global phase
      worst[k] = std::max(worst[k], (dec.state - exact[k]).norm());
      leakage = std::max(leakage, dec.leakage);
    }
  }
  const double max_dev = a.times.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
  const bool ok = max_dev <= tol;

  Json rep = header(g, "dynamics");
  rep["input"] = h1.label;
  rep["states"] = a.states;
  Json per = Json::array();
  for (std::size_t k = 0; k < a.times.size(); ++k) per.push_back(Json::array({a.times[k], worst[k]}));
  rep["deviation_by_time"] = per;
  rep["max_deviation"] = max_dev;
  rep["max_leakage"] = leakage;
  rep["tolerance"] = tol;
  rep["passed"] = ok;
  std::vector<std::string> text;
  for (std::size_t k = 0; k < a.times.size(); ++k) text.push_back("t=" + fmt(a.times[k]) + " deviation " + fmt(worst[k]));
  text.push_back("max leakage " + fmt(leakage));
  text.emplace_back(ok ? "PASS" : "FAIL");
  emit(g, rep, text, true);
  return ok ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

struct ThermalArgs {
  std::string h1;
  std::string h2;
  std::vector<double> field;  // B, J
  std::vector<int> n_list;
  std::string model = "literal";
  std::vector<double> betas;
  std::vector<double> closed_form;  // B, J
};

int cmd_thermal(const Globals& g, const ThermalArgs& a) {
  struct Pair {
    int n;
    SparseOperator h1, h2;
  };
  std::vector<Pair> pairs;
  std::vector<double> closed = a.closed_form;
  if (!a.field.empty()) {
    if (!a.h1.empty() || !a.h2.empty()) throw UsageError("--field replaces --h1/--h2");
    if (a.n_list.empty()) throw UsageError("--field needs --n");
    if (closed.empty() && a.model == "literal") closed = a.field;
    for (int n : a.n_list) {
      const SpinChainHamiltonian f = field_model(a.field[0], n);
      const SpinChainHamiltonian h2 = a.model == "literal"
                                          ? literal_direct_sum_field_model(a.field[0], a.field[1], n)
                                          : encode_hamiltonian(f, 3, HalfInteger::from_twice(1), a.field[1]).h2;
      pairs.push_back({n, build_global(f), build_global(h2)});
    }
  } else {
    if (a.h1.empty() || a.h2.empty()) throw UsageError("thermal needs --h1 and --h2, or --field");
    const SpinChainHamiltonian h1 = load_hamiltonian(a.h1);
    pairs.push_back({h1.n_sites, build_global(h1), build_global(load_hamiltonian(a.h2))});
  }

  std::ostringstream csv;
  csv << "N,beta,logZ1,logZ2,ratio" << (closed.empty() ? "" : ",closed_form") << "\n";
  Json rows = Json::array();
  for (const auto& p : pairs) {
    for (double beta : a.betas) {
      const double z1 = log_partition_function(p.h1, beta);
      const double z2 = log_partition_function(p.h2, beta);
      const double ratio = std::exp(z1 - z2);
      csv << p.n << "," << fmt(beta) << "," << fmt(z1) << "," << fmt(z2) << "," << fmt(ratio);
      Json row;
      row["N"] = p.n;
      row["beta"] = beta;
      row["logZ1"] = z1;
      row["logZ2"] = z2;
      row["ratio"] = ratio;
      if (!closed.empty()) {
        const double c = suppression_ratio_field_model(closed[0], beta, closed[1], p.n);
        csv << "," << fmt(c);
        row["closed_form"] = c;
      }
      csv << "\n";
      rows.push_back(row);
    }
  }
  if (g.json) {
    Json rep = header(g, "thermal");
    rep["rows"] = rows;
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << csv.str();
  }
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw std::invalid_argument("cannot write " + g.out);
    f << csv.str();
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation- and translation-invariant encodings of spin Hamiltonians"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--tol", g.tol, "Override the command's tolerance");
  app.add_option("--out", g.out, "Output path for the command's artifact");
  app.add_flag("--json", g.json, "Print the report as JSON");

  DecomposeArgs dec;
  auto* c_dec = app.add_subcommand("decompose", "Total-spin sectors of r qubits");
  c_dec->add_option("--r", dec.r, "Number of qubits")->required();

  ProjectorArgs proj;
  auto* c_proj = app.add_subcommand("projector", "Build and check a total-spin projector");
  c_proj->add_option("--r", proj.r)->required();
  c_proj->add_option("--twice-j", proj.twice_j, "2j (defaults to the smallest admissible)");

  EncodeArgs encode;
  auto* c_enc = app.add_subcommand("encode", "Rotation-invariant encoding of a Hamiltonian file");
  c_enc->add_option("--input", encode.input)->required()->check(CLI::ExistingFile);
  c_enc->add_option("--r", encode.r)->required();
  c_enc->add_option("--twice-j", encode.twice_j);
  c_enc->add_option("--J", encode.penalty, "Penalty strength (default 2k·max‖h‖)");
  c_enc->add_option("--encoding-out", encode.encoding_out, "Encoding file (default <out>.encoding.json)");

  FlagsArgs flags;
  auto* c_flags = app.add_subcommand("flags", "Flag specification and overlap report");
  c_flags->add_option("--r", flags.r)->required();
  c_flags->add_option("--twice-j", flags.twice_j);
  c_flags->add_option("--variant", flags.variant)->check(CLI::IsMember({"general", "improved", "small_r"}));
  c_flags->add_option("--k", flags.k, "Locality for the k' preview")->check(CLI::PositiveNumber);

  BuildTriArgs tri;
  auto* c_tri = app.add_subcommand("build-tri", "Translation- and rotation-invariant Hamiltonian");
  c_tri->add_option("--input", tri.input, "Hamiltonian file with one term on sites 0..k-1")
      ->required()
      ->check(CLI::ExistingFile);
  c_tri->add_option("--r", tri.r)->required();
  c_tri->add_option("--twice-j", tri.twice_j);
  c_tri->add_option("--variant", tri.variant)->check(CLI::IsMember({"general", "improved", "small_r"}));
  c_tri->add_option("--n", tri.n, "Logical sites on the ring")->check(CLI::PositiveNumber);

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Run invariance and spectrum checks");
  c_ver->add_option("--input", ver.input)->required()->check(CLI::ExistingFile);
  c_ver->add_option("--check", ver.checks, "ri, ti, spectrum, flags")
      ->required()
      ->check(CLI::IsMember({"ri", "ti", "spectrum", "flags"}));
  c_ver->add_option("--period", ver.period)->check(CLI::PositiveNumber);
  c_ver->add_option("--reference", ver.reference, "Reference Hamiltonian for the spectrum check")
      ->check(CLI::ExistingFile);
  c_ver->add_option("--samples", ver.samples, "Samples for estimated translation residuals")
      ->check(CLI::PositiveNumber);
  c_ver->add_option("--rotations", ver.rotations, "Random rotations reported by the ri check")
      ->check(CLI::NonNegativeNumber);

  SpectrumArgs spec;
  auto* c_spec = app.add_subcommand("spectrum", "Lowest eigenvalues of a Hamiltonian file");
  c_spec->add_option("--input", spec.input)->required()->check(CLI::ExistingFile);
  c_spec->add_option("--count", spec.count, "Levels to report (0: all, dense)");
  c_spec->add_option("--method", spec.method)->check(CLI::IsMember({"auto", "dense", "iterative"}));

  DynamicsArgs dyn;
  auto* c_dyn = app.add_subcommand("dynamics", "Compare encoded and logical time evolution");
  c_dyn->add_option("--h1", dyn.h1)->required()->check(CLI::ExistingFile);
  c_dyn->add_option("--encoding", dyn.encoding)->required()->check(CLI::ExistingFile);
  c_dyn->add_option("--times", dyn.times)->delimiter(',');
  c_dyn->add_option("--states", dyn.states)->check(CLI::PositiveNumber);

  ThermalArgs th;
  auto* c_th = app.add_subcommand("thermal", "Partition-function ratios as CSV");
  c_th->add_option("--h1", th.h1)->check(CLI::ExistingFile);
  c_th->add_option("--h2", th.h2)->check(CLI::ExistingFile);
  c_th->add_option("--field", th.field, "B,J: built-in field model instead of files")->delimiter(',')->expected(2);
  c_th->add_option("--n", th.n_list, "Site counts for --field")->delimiter(',');
  c_th->add_option("--model", th.model, "Encoded side for --field")->check(CLI::IsMember({"literal", "ri"}));
  c_th->add_option("--beta", th.betas)->required()->delimiter(',');
  c_th->add_option("--closed-form", th.closed_form, "B,J for the closed-form column")->delimiter(',')->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*c_dec) return cmd_decompose(g, dec);
    if (*c_proj) return cmd_projector(g, proj);
    if (*c_enc) return cmd_encode(g, encode);
    if (*c_flags) return cmd_flags(g, flags);
    if (*c_tri) return cmd_build_tri(g, tri);
    if (*c_ver) return cmd_verify(g, ver);
    if (*c_spec) return cmd_spectrum(g, spec);
    if (*c_dyn) return cmd_dynamics(g, dyn);
    if (*c_th) return cmd_thermal(g, th);
  } catch (const SchemaError& e) {
    const std::string what = e.what();
    std::cerr << "schema error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": "
              << what.substr(e.pointer().size() + 2) << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitFail;
  } catch (const DegenerateDecodeError& e) {
    std::cerr << "decode failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
