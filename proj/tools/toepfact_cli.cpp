// Command-line harness: generate Toeplitz instances, factor and solve them,
// and run experiment batteries that emit CSV or JSON rows.
//
// Exit codes: 0 success, 2 usage or invalid input, 3 breakdown / not positive
// definite, 4 I/O failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toepfact/bareiss.hpp"
#include "toepfact/core.hpp"
#include "toepfact/errors.hpp"
#include "toepfact/factor.hpp"
#include "toepfact/genmat.hpp"
#include "toepfact/solvers.hpp"
#include "toepfact/stability.hpp"

using namespace toepfact;

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr double kEps = 0x1p-53;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- file io

// Writes either to the given path or, with an empty path, to stdout.
class DataOut {
 public:
  explicit DataOut(const std::string& path) : path_(path) {
    if (path.empty()) {
      out_ = &std::cout;
    } else {
      file_.open(path);
      if (!file_) throw IoError("cannot open for writing: " + path);
      out_ = &file_;
    }
  }

  std::ostream& os() { return *out_; }

  void finish() {
    out_->flush();
    if (!*out_) throw IoError("write failed: " + (path_.empty() ? "<stdout>" : path_));
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

void write_file_header(std::ostream& os, const char* kind,
                       const std::string& seed) {
  os << "# toepfact " << kToolVersion << "\n"
     << "# rng splitmix64\n"
     << "# seed " << seed << "\n"
     << "# eps " << fmt(kEps) << "\n"
     << "# kind " << kind << "\n";
}

// All numbers in a file, in order; lines starting with '#' are skipped.
std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<double> vals;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    double v;
    while (ls >> v) vals.push_back(v);
    if (!ls.eof()) throw IoError("malformed number in " + path);
  }
  if (in.bad()) throw IoError("read failed: " + path);
  return vals;
}

std::size_t leading_count(const std::vector<double>& vals,
                          const std::string& path) {
  if (vals.empty()) throw IoError("empty input: " + path);
  double n = vals[0];
  if (n < 1 || n != std::floor(n) || n > 1e9)
    throw IoError("bad element count in " + path);
  return static_cast<std::size_t>(n);
}

Vector read_vector_file(const std::string& path) {
  auto vals = read_numbers(path);
  std::size_t n = leading_count(vals, path);
  if (vals.size() != n + 1)
    throw IoError("expected " + std::to_string(n) + " entries in " + path);
  return Vector(vals.begin() + 1, vals.end());
}

ToeplitzSpd read_matrix_file(const std::string& path) {
  return ToeplitzSpd(read_vector_file(path));
}

DenseMatrix read_dense_file(const std::string& path) {
  auto vals = read_numbers(path);
  std::size_t n = leading_count(vals, path);
  if (vals.size() != n * n + 1)
    throw IoError("expected " + std::to_string(n * n) + " entries in " + path);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = vals[1 + i * n + j];
  if (!m.symmetric())
    throw DomainError("dense input must be exactly symmetric");
  return m;
}

void write_matrix_file(std::ostream& os, const ToeplitzSpd& T,
                       const std::string& seed) {
  write_file_header(os, "matrix", seed);
  os << T.n() << "\n";
  for (std::size_t k = 0; k < T.n(); ++k) os << fmt(T.t(k)) << "\n";
}

void write_vector_file(std::ostream& os, const Vector& x) {
  write_file_header(os, "vector", "none");
  os << x.size() << "\n";
  for (double v : x) os << fmt(v) << "\n";
}

// ------------------------------------------------------ generator recovery

// Recovers the (u, v) pair of a dense symmetric displacement-rank-2 matrix:
// u is the first row over sqrt(M00), and vv^T must equal uu^T minus the
// displacement M - ZMZ^T. Rejects matrices of higher displacement rank.
GeneratorPair dense_to_generators(const DenseMatrix& m) {
  std::size_t n = m.rows();
  if (m(0, 0) <= 0.0)
    throw NotPositiveDefiniteError("dense input: nonpositive corner entry", 0);
  double s = std::sqrt(m(0, 0));
  Vector u(n), v(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) u[j] = m(0, j) / s;

  // residual r = uu^T - (M - ZMZ^T), which must be a rank-1 square vv^T
  DenseMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double disp = m(i, j);
      if (i > 0 && j > 0) disp -= m(i - 1, j - 1);
      r(i, j) = u[i] * u[j] - disp;
    }

  double tol = 1e-8 * (1.0 + one_norm(m));
  if (n > 1) {
    if (r(1, 1) < -tol)
      throw DomainError("dense input is not displacement rank 2");
    double v1 = std::sqrt(std::max(r(1, 1), 0.0));
    v[1] = v1;
    if (v1 > 0.0)
      for (std::size_t j = 2; j < n; ++j) v[j] = r(1, j) / v1;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(r(i, j) - v[i] * v[j]) > tol)
        throw DomainError("dense input is not displacement rank 2");
  return GeneratorPair(std::move(u), std::move(v), 1);
}

// ------------------------------------------------------------- dispatch

Variant plain_variant(const std::string& name) {
  if (name == "bareiss_hyp") return Variant::hyperbolic;
  if (name == "bareiss_mixed") return Variant::mixed;
  return Variant::mixed_alt;
}

ScaledVariant scaled_variant(const std::string& name) {
  return name == "bareiss_scaled_hyp" ? ScaledVariant::hyperbolic
                                      : ScaledVariant::mixed;
}

bool is_plain_variant(const std::string& m) {
  return m == "bareiss_hyp" || m == "bareiss_mixed" || m == "bareiss_mixed_alt";
}

bool is_scaled_variant(const std::string& m) {
  return m == "bareiss_scaled_hyp" || m == "bareiss_scaled_mixed";
}

RhsMode parse_rhs_mode(const std::string& s) {
  if (s == "unit_solution") return RhsMode::unit_solution;
  if (s == "scaled") return RhsMode::scaled;
  if (s == "random") return RhsMode::random;
  throw DomainError("unknown rhs mode: " + s +
                    " (expected unit_solution, scaled, or random)");
}

// "21", "10,20,40", or "10:100:10" (inclusive range with step).
std::vector<std::size_t> parse_n_list(const std::string& s) {
  auto parse_one = [&](const std::string& tok) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      throw DomainError("bad dimension: " + tok);
    }
    if (pos != tok.size() || v < 1 || v > 100000)
      throw DomainError("bad dimension: " + tok);
    return static_cast<std::size_t>(v);
  };

  std::vector<std::size_t> out;
  if (s.find(':') != std::string::npos) {
    std::istringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
        !std::getline(ss, c))
      throw DomainError("range must be start:end:step, got " + s);
    std::size_t start = parse_one(a), end = parse_one(b), step = parse_one(c);
    if (start > end) throw DomainError("empty range: " + s);
    for (std::size_t n = start; n <= end; n += step) out.push_back(n);
  } else {
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_one(tok));
  }
  if (out.empty()) throw DomainError("no dimensions given");
  return out;
}

// ------------------------------------------------------------- generate

void cmd_generate_prolate(std::size_t n, double omega,
                          const std::string& out_path) {
  auto T = prolate(n, omega);
  DataOut out(out_path);
  write_matrix_file(out.os(), T, "none");
  out.finish();
}

void cmd_generate_refl(double t0, const std::string& pattern, double magnitude,
                       std::size_t n, const std::string& rho_file,
                       const std::string& out_path) {
  Vector rhos;
  if (!rho_file.empty()) {
    rhos = read_vector_file(rho_file);
  } else {
    if (pattern != "alternating")
      throw DomainError("unknown pattern: " + pattern);
    if (n < 1) throw DomainError("dimension must be at least 1");
    rhos = alternating_rhos(n - 1, magnitude);
  }
  auto T = from_reflection_coeffs({t0, rhos});
  DataOut out(out_path);
  write_matrix_file(out.os(), T, "none");
  out.finish();
}

void cmd_generate_random(std::size_t n, double rho_max, std::uint64_t seed,
                         const std::string& out_path) {
  auto T = random_spd_toeplitz(n, rho_max, seed);
  DataOut out(out_path);
  write_matrix_file(out.os(), T, std::to_string(seed));
  out.finish();
}

// --------------------------------------------------------------- factor

void cmd_factor(const std::string& input, bool dense, const std::string& method,
                const std::string& out_path) {
  static const std::vector<std::string> kMethods = {
      "bareiss_full",       "bareiss_hyp",          "bareiss_mixed",
      "bareiss_mixed_alt",  "bareiss_scaled_hyp",   "bareiss_scaled_mixed",
      "cholesky"};
  if (std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end())
    throw DomainError("unknown factorization method: " + method);

  DenseMatrix reference(1, 1);
  std::optional<ToeplitzSpd> toeplitz;
  std::optional<GeneratorPair> gen;
  if (dense) {
    reference = read_dense_file(input);
    gen = dense_to_generators(reference);
  } else {
    toeplitz = read_matrix_file(input);
    reference = toeplitz->materialize();
    gen = toeplitz_generators(*toeplitz);
  }

  DataOut out(out_path);
  double err = 0.0;
  if (method == "cholesky") {
    auto F = cholesky_dense(reference);
    err = decomposition_error(reference, F);
    write_file_header(out.os(), "factor", "none");
    out.os() << "# format dense-upper\n" << F.n() << "\n";
    for (std::size_t i = 0; i < F.n(); ++i)
      for (std::size_t j = 0; j < F.n(); ++j)
        out.os() << fmt(F.U(i, j)) << "\n";
  } else if (method == "bareiss_full") {
    if (!toeplitz)
      throw DomainError("bareiss_full requires a Toeplitz input file");
    auto [U, alphas] = bareiss_factor(*toeplitz);
    err = decomposition_error(reference,
                              TriangularFactor(U, Orientation::upper));
    write_file_header(out.os(), "factor", "none");
    out.os() << "# format dense-upper\n" << U.rows() << "\n";
    for (std::size_t i = 0; i < U.rows(); ++i)
      for (std::size_t j = 0; j < U.cols(); ++j)
        out.os() << fmt(U(i, j)) << "\n";
  } else if (is_plain_variant(method)) {
    auto r = factor(*gen, plain_variant(method));
    err = decomposition_error(reference,
                              TriangularFactor(r.U, Orientation::upper));
    write_file_header(out.os(), "factor", "none");
    out.os() << "# format dense-upper\n" << r.U.rows() << "\n";
    for (std::size_t i = 0; i < r.U.rows(); ++i)
      for (std::size_t j = 0; j < r.U.cols(); ++j)
        out.os() << fmt(r.U(i, j)) << "\n";
  } else {
    ScaledGeneratorPair sg(gen->u, gen->v, 1.0, 1.0, gen->k);
    auto r = factor_scaled(sg, scaled_variant(method));
    err = decomposition_error(reference,
                              TriangularFactor(r.unscaled(),
                                               Orientation::upper));
    write_file_header(out.os(), "factor", "none");
    out.os() << "# format scaled-pair\n" << r.W.rows() << "\n";
    for (double d : r.D) out.os() << fmt(d) << "\n";
    for (std::size_t i = 0; i < r.W.rows(); ++i)
      for (std::size_t j = 0; j < r.W.cols(); ++j)
        out.os() << fmt(r.W(i, j)) << "\n";
  }
  out.finish();
  std::cerr << "decomp_error_eps = " << fmt(err) << "\n";
}

// ---------------------------------------------------------------- solve

Vector solve_with_upper(const DenseMatrix& U, const Vector& b) {
  TriangularFactor lower(U.transposed(), Orientation::lower);
  TriangularFactor upper(U, Orientation::upper);
  return solve_triangular(upper, solve_triangular(lower, b));
}

void cmd_solve(const std::string& input, const std::string& rhs_file,
               const std::string& rhs_mode_name, std::uint64_t rhs_seed,
               const std::string& method, const std::string& out_path) {
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), method) == names.end())
    throw DomainError("unknown solve method: " + method);

  auto T = read_matrix_file(input);
  std::size_t n = T.n();

  Vector b;
  std::optional<Vector> x_true;
  if (!rhs_file.empty()) {
    b = read_vector_file(rhs_file);
    if (b.size() != n)
      throw DimensionError("right-hand side length does not match the matrix");
  } else {
    RhsMode mode = parse_rhs_mode(rhs_mode_name);
    if (mode == RhsMode::random) {
      SplitMix64 rng(rhs_seed);
      b.resize(n);
      for (double& e : b) e = 2.0 * rng.next_double() - 1.0;
    } else {
      Vector xt(n);
      double inv = 1.0 / std::sqrt(static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        xt[i] = (i % 2 == 0 ? inv : -inv);
      if (mode == RhsMode::scaled)
        for (double& e : xt) e /= kEps;
      b = toeplitz_matvec(T, xt);
      x_true = std::move(xt);
    }
  }

  Vector x;
  if (method == "levinson") {
    x = levinson_solve(T, b).x;
  } else if (method == "bareiss_full") {
    x = bareiss_solve(T, b);
  } else if (method == "cholesky") {
    x = solve_with_upper(cholesky_dense(T.materialize()).U, b);
  } else if (is_plain_variant(method)) {
    x = solve_with_upper(factor(toeplitz_generators(T), plain_variant(method)).U,
                         b);
  } else {
    auto g = toeplitz_generators(T);
    ScaledGeneratorPair sg(g.u, g.v, 1.0, 1.0, g.k);
    x = solve_with_upper(factor_scaled(sg, scaled_variant(method)).unscaled(),
                         b);
  }

  DataOut out(out_path);
  write_vector_file(out.os(), x);
  out.finish();
  std::cerr << "scaled_residual_eps = " << fmt(scaled_residual(T, x, b))
            << "\n";
  if (x_true)
    std::cerr << "solution_error = " << fmt(solution_error(x, *x_true))
              << "\n";
}

// ---------------------------------------------------------------- bench

struct PendingInstance {
  std::string descriptor;
  std::size_t n = 0;
  std::function<ToeplitzSpd()> make;
};

std::size_t worker_count() {
  const char* env = std::getenv("TOEPFACT_WORKERS");
  if (!env) return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<std::size_t>(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string join_warnings(const std::vector<std::string>& warnings) {
  std::string out;
  for (std::size_t i = 0; i < warnings.size(); ++i) {
    if (i) out += ";";
    out += warnings[i];
  }
  return out;
}

void emit_csv(std::ostream& os, const std::vector<StabilityReport>& rows) {
  os << "instance,algorithm,n,cond,decomp_error,soln_error,scaled_residual,"
        "warnings,error\n";
  for (const auto& r : rows) {
    os << csv_escape(r.instance_descriptor) << ',' << r.algorithm << ','
       << r.n << ',';
    if (r.cond_estimate > 0.0) os << fmt(r.cond_estimate);
    os << ',';
    if (r.decomp_error) os << fmt(*r.decomp_error);
    os << ',';
    if (r.soln_error) os << fmt(*r.soln_error);
    os << ',';
    if (r.scaled_residual) os << fmt(*r.scaled_residual);
    os << ',' << csv_escape(join_warnings(r.warnings)) << ','
       << csv_escape(r.error) << "\n";
  }
}

void emit_json(std::ostream& os, const std::vector<StabilityReport>& rows,
               const std::string& rhs_mode, std::uint64_t rhs_seed,
               const std::optional<std::uint64_t>& seed) {
  nlohmann::json j;
  j["meta"] = {{"tool", "toepfact"},
               {"version", kToolVersion},
               {"rng", "splitmix64"},
               {"eps", kEps},
               {"rhs_mode", rhs_mode},
               {"rhs_seed", rhs_seed}};
  if (seed)
    j["meta"]["seed"] = *seed;
  else
    j["meta"]["seed"] = nullptr;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"instance", r.instance_descriptor},
                          {"algorithm", r.algorithm},
                          {"n", r.n},
                          {"warnings", r.warnings}};
    row["cond"] = r.cond_estimate > 0.0 ? nlohmann::json(r.cond_estimate)
                                        : nlohmann::json(nullptr);
    row["decomp_error"] =
        r.decomp_error ? nlohmann::json(*r.decomp_error) : nullptr;
    row["soln_error"] = r.soln_error ? nlohmann::json(*r.soln_error) : nullptr;
    row["scaled_residual"] =
        r.scaled_residual ? nlohmann::json(*r.scaled_residual) : nullptr;
    row["error"] = r.error.empty() ? nlohmann::json(nullptr)
                                   : nlohmann::json(r.error);
    j["rows"].push_back(std::move(row));
  }
  os << j.dump(2) << "\n";
}

void cmd_bench(const std::vector<PendingInstance>& pending,
               const std::vector<std::string>& algorithms,
               const std::string& rhs_mode_name, std::uint64_t rhs_seed,
               const std::string& format, const std::string& out_path,
               const std::optional<std::uint64_t>& seed) {
  if (format != "csv" && format != "json")
    throw DomainError("unknown output format: " + format);

  ExperimentConfig cfg;
  cfg.algorithms = algorithms;
  cfg.rhs_mode = parse_rhs_mode(rhs_mode_name);
  cfg.rhs_seed = rhs_seed;

  // Validate names up front so a typo fails the whole run, not each row.
  ExperimentInstance probe{ToeplitzSpd({1.0}), "probe"};
  run_experiment(probe, cfg);

  std::vector<std::vector<StabilityReport>> slots(pending.size());
  auto run_slot = [&](std::size_t i) {
    try {
      ExperimentInstance inst{pending[i].make(), pending[i].descriptor};
      slots[i] = run_experiment(inst, cfg);
    } catch (const Error& e) {
      // instance-level failure: one row per algorithm, error column set
      std::vector<std::string> sorted = algorithms;
      std::sort(sorted.begin(), sorted.end());
      for (const auto& name : sorted) {
        StabilityReport r;
        r.algorithm = name;
        r.n = pending[i].n;
        r.instance_descriptor = pending[i].descriptor;
        r.error = std::string("instance: ") + e.what();
        slots[i].push_back(std::move(r));
      }
    }
  };

  std::size_t workers = std::min(worker_count(), pending.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < pending.size(); ++i) run_slot(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < pending.size(); i += workers) run_slot(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<StabilityReport> rows;
  for (auto& s : slots)
    for (auto& r : s) rows.push_back(std::move(r));

  DataOut out(out_path);
  if (format == "csv")
    emit_csv(out.os(), rows);
  else
    emit_json(out.os(), rows, rhs_mode_name, rhs_seed, seed);
  out.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cholesky factorization of symmetric positive definite "
               "Toeplitz and displacement-rank-2 matrices"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand(
      "generate", "Write a matrix file for a generated SPD Toeplitz instance");
  gen->require_subcommand(1);

  std::string gen_out;
  std::size_t gp_n = 0;
  double gp_omega = 0.0;
  auto* gp = gen->add_subcommand("prolate", "Prolate matrix, t0 = 2*omega");
  gp->add_option("--n", gp_n, "dimension")->required();
  gp->add_option("--omega", gp_omega, "band parameter in (0, 1/2]")
      ->required();
  gp->add_option("-o,--output", gen_out, "output path (default stdout)");

  double gr_t0 = 1.0, gr_mag = 0.0;
  std::size_t gr_n = 0;
  std::string gr_pattern = "alternating", gr_file;
  auto* gr = gen->add_subcommand(
      "refl", "Matrix defined by reflection coefficients");
  gr->add_option("--t0", gr_t0, "diagonal value (default 1)");
  gr->add_option("--pattern", gr_pattern, "coefficient pattern: alternating");
  gr->add_option("--magnitude", gr_mag, "pattern magnitude in [0, 1)");
  gr->add_option("--n", gr_n, "dimension (pattern mode)");
  gr->add_option("--file", gr_file,
                 "read coefficients from a vector file instead of a pattern");
  gr->add_option("-o,--output", gen_out, "output path (default stdout)");

  std::size_t gd_n = 0;
  double gd_rho_max = 0.9;
  std::uint64_t gd_seed = 0;
  auto* gd = gen->add_subcommand("random", "Random reflection coefficients");
  gd->add_option("--n", gd_n, "dimension")->required();
  gd->add_option("--rho-max", gd_rho_max, "coefficient cap in [0, 1)");
  gd->add_option("--seed", gd_seed, "random seed")->required();
  gd->add_option("-o,--output", gen_out, "output path (default stdout)");

  // ---- factor ----
  std::string f_input, f_method = "bareiss_mixed", f_out;
  bool f_dense = false;
  auto* fac = app.add_subcommand(
      "factor", "Factor a matrix file and report the decomposition error");
  fac->add_option("input", f_input, "matrix file")->required();
  fac->add_flag("--dense", f_dense,
                "input is a dense symmetric displacement-rank-2 matrix");
  fac->add_option("--method", f_method,
                  "bareiss_full | bareiss_hyp | bareiss_mixed | "
                  "bareiss_mixed_alt | bareiss_scaled_hyp | "
                  "bareiss_scaled_mixed | cholesky");
  fac->add_option("-o,--output", f_out, "factor file path (default stdout)");

  // ---- solve ----
  std::string s_input, s_rhs_file, s_rhs_mode = "unit_solution";
  std::string s_method = "bareiss_mixed", s_out;
  std::uint64_t s_rhs_seed = 0;
  auto* sol = app.add_subcommand(
      "solve", "Solve T x = b and report the scaled residual");
  sol->add_option("input", s_input, "matrix file")->required();
  auto* rhs_file_opt =
      sol->add_option("--rhs", s_rhs_file, "right-hand side vector file");
  auto* rhs_mode_opt = sol->add_option(
      "--rhs-mode", s_rhs_mode, "unit_solution | scaled | random");
  sol->add_option("--rhs-seed", s_rhs_seed, "seed for --rhs-mode random");
  sol->add_option("--method", s_method, "any experiment algorithm name");
  sol->add_option("-o,--output", s_out, "solution file path (default stdout)");
  rhs_file_opt->excludes(rhs_mode_opt);

  // ---- bench ----
  std::vector<std::string> b_algorithms;
  std::string b_rhs_mode = "unit_solution", b_format = "csv", b_out;
  std::uint64_t b_rhs_seed = 0;
  auto* bench = app.add_subcommand(
      "bench", "Run an experiment battery and emit CSV or JSON rows");
  bench->require_subcommand(1);
  bench->fallthrough();
  bench
      ->add_option("--algorithms", b_algorithms,
                   "comma-separated algorithm names")
      ->delimiter(',')
      ->required();
  bench->add_option("--rhs-mode", b_rhs_mode,
                    "unit_solution | scaled | random");
  bench->add_option("--rhs-seed", b_rhs_seed, "seed for --rhs-mode random");
  bench->add_option("--format", b_format, "csv | json");
  bench->add_option("-o,--output", b_out, "output path (default stdout)");

  std::string bp_n, br_n, bd_n;
  double bp_omega = 0.0, br_t0 = 1.0, br_mag = 0.0, bd_rho_max = 0.9;
  std::string br_pattern = "alternating", br_file;
  std::uint64_t bd_seed = 0;

  auto* bp = bench->add_subcommand("prolate", "prolate instances");
  bp->add_option("--n", bp_n, "dimension, list, or start:end:step sweep")
      ->required();
  bp->add_option("--omega", bp_omega, "band parameter in (0, 1/2]")
      ->required();

  auto* br = bench->add_subcommand("refl", "reflection-coefficient instances");
  br->add_option("--n", br_n, "dimension, list, or start:end:step sweep");
  br->add_option("--t0", br_t0, "diagonal value (default 1)");
  br->add_option("--pattern", br_pattern, "coefficient pattern: alternating");
  br->add_option("--magnitude", br_mag, "pattern magnitude in [0, 1)");
  br->add_option("--file", br_file, "coefficients from a vector file");

  auto* bd = bench->add_subcommand("random", "random instances");
  bd->add_option("--n", bd_n, "dimension, list, or start:end:step sweep")
      ->required();
  bd->add_option("--rho-max", bd_rho_max, "coefficient cap in [0, 1)");
  bd->add_option("--seed", bd_seed,
                 "base seed; sweep instance i uses seed + i")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*gp) {
      cmd_generate_prolate(gp_n, gp_omega, gen_out);
    } else if (*gr) {
      if (!gr_file.empty() && gr->count("--n") > 0)
        throw DomainError("--file and --n are mutually exclusive");
      if (gr_file.empty() && gr->count("--n") == 0)
        throw DomainError("refl needs either --file or --pattern with --n");
      cmd_generate_refl(gr_t0, gr_pattern, gr_mag, gr_n, gr_file, gen_out);
    } else if (*gd) {
      cmd_generate_random(gd_n, gd_rho_max, gd_seed, gen_out);
    } else if (*fac) {
      cmd_factor(f_input, f_dense, f_method, f_out);
    } else if (*sol) {
      cmd_solve(s_input, s_rhs_file, s_rhs_mode, s_rhs_seed, s_method, s_out);
    } else if (*bench) {
      std::vector<PendingInstance> pending;
      std::optional<std::uint64_t> meta_seed;
      if (*bp) {
        for (std::size_t n : parse_n_list(bp_n)) {
          std::string d = "prolate:n=" + std::to_string(n) +
                          ":omega=" + fmt(bp_omega);
          pending.push_back({d, n, [=] { return prolate(n, bp_omega); }});
        }
      } else if (*br) {
        if (!br_file.empty()) {
          if (!br_n.empty())
            throw DomainError("--file and --n are mutually exclusive");
          Vector rhos = read_vector_file(br_file);
          std::size_t n = rhos.size() + 1;
          std::string d = "refl:n=" + std::to_string(n) + ":file=" + br_file;
          double t0 = br_t0;
          pending.push_back(
              {d, n, [=] { return from_reflection_coeffs({t0, rhos}); }});
        } else {
          if (br_n.empty())
            throw DomainError("refl needs either --file or --pattern with --n");
          for (std::size_t n : parse_n_list(br_n)) {
            std::string d = "refl:n=" + std::to_string(n) +
                            ":pattern=" + br_pattern +
                            ":magnitude=" + fmt(br_mag) + ":t0=" + fmt(br_t0);
            double t0 = br_t0, mag = br_mag;
            std::string pattern = br_pattern;
            pending.push_back({d, n, [=] {
                                 if (pattern != "alternating")
                                   throw DomainError("unknown pattern: " +
                                                     pattern);
                                 return from_reflection_coeffs(
                                     {t0, alternating_rhos(n - 1, mag)});
                               }});
          }
        }
      } else if (*bd) {
        meta_seed = bd_seed;
        auto ns = parse_n_list(bd_n);
        for (std::size_t i = 0; i < ns.size(); ++i) {
          std::size_t n = ns[i];
          std::uint64_t seed = bd_seed + i;
          std::string d = "random:n=" + std::to_string(n) +
                          ":rho_max=" + fmt(bd_rho_max) +
                          ":seed=" + std::to_string(seed);
          double cap = bd_rho_max;
          pending.push_back(
              {d, n, [=] { return random_spd_toeplitz(n, cap, seed); }});
        }
      }
      cmd_bench(pending, b_algorithms, b_rhs_mode, b_rhs_seed, b_format,
                b_out, meta_seed);
    }
  } catch (const BreakdownError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotPositiveDefiniteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ZeroPivotError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IllConditionedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
