// Copyright 2026 The bregmat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bregmat/bregman.hpp"
#include "bregmat/cli.hpp"
#include "bregmat/convexity_lab.hpp"
#include "bregmat/errors.hpp"
#include "bregmat/matrix_calculus.hpp"
#include "bregmat/matrix_io.hpp"
#include "bregmat/parallel.hpp"
#include "bregmat/quantum_states.hpp"

namespace bregmat {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses a flag value, naming the flag when it is malformed.
template <class Parse>
auto flag_value(const char* flag, const std::string& text, Parse parse) {
  try {
    return parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

ScalarFunctionFamily family_flag(const std::string& text) {
  return flag_value("--f", text, ScalarFunctionFamily::parse);
}

const std::vector<std::string> kIdentityFamilies = {
    "entropy", "tsallis:q=1.3", "tsallis:q=2", "shifted-entropy:lambda=0.5",
    "quadratic:gamma=1"};

std::string method_anchor(Method m) {
  switch (m) {
    case Method::kClosed:
      return "trace form Tr f(X) - Tr f(Y) - Tr f'(Y)(X - Y)";
    case Method::kEigen:
      return "eigenbasis double sum weighted by squared overlaps";
    case Method::kIntegral1d:
      return "integral of (1-s) Tr D Df'[Y + sD](D) over s";
    case Method::kIntegral2d:
      return "double integral with Df' as the mean of f''(tL + (1-t)R)";
  }
  return "";
}

double rel_frobenius(const HermitianMatrix& a, const HermitianMatrix& b) {
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  return (a - b).frobenius_norm() / scale;
}

// |a - b| measured against abs + rel * max(|a|, |b|); <= 1 means agreement.
double agreement_ratio(double a, double b, double abs_tol, double rel_tol) {
  return std::abs(a - b) / (abs_tol + rel_tol * std::max(std::abs(a), std::abs(b)));
}

HermitianMatrix direct_sum(const HermitianMatrix& a, const HermitianMatrix& b) {
  const int n = a.dim(), m = b.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n + m, n + m);
  out.topLeftCorner(n, n) = a.matrix();
  out.bottomRightCorner(m, m) = b.matrix();
  return HermitianMatrix::symmetrized(out);
}

// Largest value and where it happened.
struct MaxTracker {
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t trial = 0;
  void offer(double v, std::uint64_t i) {
    if (v > value) {
      value = v;
      trial = i;
    }
  }
};

struct MinTracker {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t trial = 0;
  void offer(double v, std::uint64_t i) {
    if (v < value) {
      value = v;
      trial = i;
    }
  }
};

Record max_record(const std::string& name, const std::string& anchor,
                  const MaxTracker& m, double tol, const char* key = "max_error") {
  Record r;
  r.name = name;
  r.anchor = anchor;
  r.values[key] = json_number(m.value);
  r.values["worst_trial"] = m.trial;
  r.slack = tol - m.value;
  r.tolerance = tol;
  r.pass = m.value <= tol;
  return r;
}

Record min_record(const std::string& name, const std::string& anchor,
                  const MinTracker& m, double tol, const char* key = "min_slack") {
  Record r;
  r.name = name;
  r.anchor = anchor;
  r.values[key] = json_number(m.value);
  r.values["worst_trial"] = m.trial;
  r.slack = m.value;
  r.tolerance = tol;
  r.pass = m.value >= -tol;
  return r;
}

// ---------------------------------------------------------------------------
// divergence

Report divergence_suite(const RunConfig& cfg) {
  if (cfg.family.empty()) throw UsageError("divergence: --f is required");
  if (cfg.x_path.empty() || cfg.y_path.empty())
    throw UsageError("divergence: --x and --y are required");
  const auto fam = family_flag(cfg.family);
  const HermitianMatrix x = load_matrix(cfg.x_path).matrix;
  const HermitianMatrix y = load_matrix(cfg.y_path).matrix;
  const double tol = cfg.tol.value_or(1e-8);

  Report rep;
  rep.config["f"] = fam.to_string();
  rep.config["x"] = cfg.x_path;
  rep.config["y"] = cfg.y_path;
  rep.config["method"] = cfg.all_methods ? "all" : cfg.method;
  rep.config["tol"] = tol;
  rep.config["seed"] = cfg.seed;

  if (cfg.all_methods) {
    const auto all = bregman_all_methods(fam, x, y);
    const double closed = all[0].value;
    for (const DivergenceValue& v : all) {
      Record r;
      r.name = "divergence/" + to_string(v.method);
      r.anchor = method_anchor(v.method);
      r.values["value"] = json_number(v.value);
      const double res = v.residual_to_closed.value_or(0.0);
      r.values["residual_to_closed"] = json_number(res);
      const double allowed = tol * (1.0 + std::abs(closed));
      r.slack = allowed - res;
      r.tolerance = tol;
      r.pass = res <= allowed;
      rep.records.push_back(std::move(r));
    }
    return rep;
  }

  const Method method = flag_value("--method", cfg.method, parse_method);
  DivergenceValue v;
  std::string used = to_string(method);
  const bool positive = min_eigenvalue(x) > 0.0 && min_eigenvalue(y) > 0.0;
  if (positive) {
    v = bregman(fam, x, y, method);
  } else {
    // Singular input: only the continuous extension makes sense.
    v = bregman_extended(fam, x, y);
    used = "extended";
  }
  Record r;
  r.name = "divergence";
  r.anchor = positive ? method_anchor(method)
                      : "continuous extension to positive semidefinite arguments";
  r.values["value"] = json_number(v.value);
  r.values["method"] = used;
  r.values["infinite"] = v.is_infinite();
  r.slack = v.value;
  r.tolerance = 1e-10;
  r.pass = v.value >= -1e-10;
  rep.records.push_back(std::move(r));
  return rep;
}

// ---------------------------------------------------------------------------
// verify-identities

struct IdentityTrial {
  double agreement = 0.0;        // worst pairwise ratio, <= 1 passes
  double agreement_abs = 0.0;
  double min_value = 0.0;
  double unitary = 0.0;
  double affine = 0.0;
  double first_arg = 0.0;        // convexity slack
  double block = 0.0;
  double tensor_scaling = 0.0;
  double homogeneity = 0.0;      // NaN when not applicable
  double shift = 0.0;            // NaN when not applicable
  double fd = 0.0;
  double quad0 = 0.0;
  double quad1 = 0.0;
};

IdentityTrial identity_trial(const ScalarFunctionFamily& fam, int n, double tol,
                             std::uint64_t seed, std::uint64_t i) {
  Engine rng(derive_seed(seed, i));
  const HermitianMatrix x = random_pd(n, rng);
  const HermitianMatrix y = random_pd(n, rng);
  const HermitianMatrix z = random_pd(n, rng);
  const HermitianMatrix b = random_hermitian(n, rng);
  const ComplexMatrix u = random_unitary(n, rng);
  const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

  IdentityTrial out;
  const auto all = bregman_all_methods(fam, x, y);
  for (size_t a = 0; a < all.size(); ++a)
    for (size_t c = a + 1; c < all.size(); ++c) {
      out.agreement = std::max(out.agreement,
                               agreement_ratio(all[a].value, all[c].value, tol, tol));
      out.agreement_abs =
          std::max(out.agreement_abs, std::abs(all[a].value - all[c].value));
    }
  const double h = all[0].value;
  const double scale = std::max(1.0, std::abs(h));
  out.min_value = h;

  out.unitary =
      std::abs(bregman(fam, x.conjugated_by(u), y.conjugated_by(u)).value - h) / scale;
  out.affine = std::abs(bregman(plus_affine(fam, 0.7, -0.3), x, y).value - h) / scale;

  const HermitianMatrix mix = t * x + (1.0 - t) * z;
  const double hz = bregman(fam, z, y).value;
  out.first_arg = t * h + (1.0 - t) * hz - bregman(fam, mix, y).value;

  const double hzx = bregman(fam, z, x).value;
  out.block = std::abs(bregman(fam, direct_sum(x, z), direct_sum(y, x)).value - h - hzx) /
              std::max(1.0, std::abs(h + hzx));

  const HermitianMatrix half = HermitianMatrix::identity(2) / 2.0;
  const double lhs = bregman(fam, tensor(x, half), tensor(y, half)).value;
  const double rhs = 2.0 * bregman(fam, x / 2.0, y / 2.0).value;
  out.tensor_scaling = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));

  out.homogeneity = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> degree;
  if (const auto* ts = std::get_if<family::Tsallis>(&fam.kind())) degree = ts->q;
  if (std::holds_alternative<family::Entropy>(fam.kind())) degree = 1.0;
  if (degree) {
    out.homogeneity = 0.0;
    for (double lam : {0.5, 2.0}) {
      const double scaled = bregman(fam, lam * x, lam * y).value;
      const double expected = std::pow(lam, *degree) * h;
      out.homogeneity = std::max(out.homogeneity, std::abs(scaled - expected) /
                                                      std::max(std::abs(expected), 1e-300));
    }
  }

  out.shift = std::numeric_limits<double>::quiet_NaN();
  if (const auto* sh = std::get_if<family::ShiftedEntropy>(&fam.kind())) {
    const HermitianMatrix shift = HermitianMatrix::identity(n) * sh->lambda;
    out.shift =
        std::abs(bregman(ScalarFunctionFamily::entropy(), x + shift, y + shift).value - h) /
        scale;
  }

  const double step = 1e-5;
  const HermitianMatrix d0 = frechet_derivative(fam, 0, x, b);
  const HermitianMatrix fd = (matrix_function(fam, 0, x + step * b) -
                              matrix_function(fam, 0, x - step * b)) /
                             (2.0 * step);
  out.fd = rel_frobenius(d0, fd);
  out.quad0 = rel_frobenius(d0, frechet_derivative_quadrature(fam, 0, x, b));
  out.quad1 = rel_frobenius(frechet_derivative(fam, 1, x, b),
                            frechet_derivative_quadrature(fam, 1, x, b));
  return out;
}

Report verify_identities_suite(const RunConfig& cfg) {
  const int n = cfg.dim.value_or(3);
  const std::uint64_t trials = cfg.trials.value_or(50);
  const double tol = cfg.tol.value_or(1e-8);
  if (n < 1) throw UsageError("verify-identities: --dim must be >= 1");
  if (trials < 1) throw UsageError("verify-identities: --trials must be >= 1");
  std::vector<std::string> names = kIdentityFamilies;
  if (!cfg.family.empty()) names = {cfg.family};

  Report rep;
  rep.config["f"] = names;
  rep.config["dim"] = n;
  rep.config["trials"] = trials;
  rep.config["seed"] = cfg.seed;
  rep.config["tol"] = tol;

  for (const std::string& name : names) {
    const auto fam = family_flag(name);
    const std::string tag = fam.to_string() + "/";
    std::vector<IdentityTrial> res(trials);
    parallel_for(trials, cfg.threads,
                 [&](std::size_t i) { res[i] = identity_trial(fam, n, tol, cfg.seed, i); });

    MaxTracker agree, agree_abs, unitary, affine, block, tensor_scale, homog, shift, fd, q0, q1;
    MinTracker nonneg, first_arg;
    bool has_homog = false, has_shift = false;
    for (std::uint64_t i = 0; i < trials; ++i) {
      const IdentityTrial& r = res[i];
      agree.offer(r.agreement, i);
      agree_abs.offer(r.agreement_abs, i);
      nonneg.offer(r.min_value, i);
      unitary.offer(r.unitary, i);
      affine.offer(r.affine, i);
      first_arg.offer(r.first_arg, i);
      block.offer(r.block, i);
      tensor_scale.offer(r.tensor_scaling, i);
      if (!std::isnan(r.homogeneity)) {
        has_homog = true;
        homog.offer(r.homogeneity, i);
      }
      if (!std::isnan(r.shift)) {
        has_shift = true;
        shift.offer(r.shift, i);
      }
      fd.offer(r.fd, i);
      q0.offer(r.quad0, i);
      q1.offer(r.quad1, i);
    }

    Record ag = max_record(tag + "representation-agreement",
                           "closed, eigen, integral-1d and integral-2d agree pairwise "
                           "within tol + tol * max(|a|, |b|)",
                           agree, 1.0, "worst_ratio");
    ag.values["worst_abs_difference"] = json_number(agree_abs.value);
    ag.values["tol"] = tol;
    rep.records.push_back(std::move(ag));
    rep.records.push_back(min_record(tag + "nonnegativity",
                                     "H_f(X, Y) >= 0 for convex f", nonneg, 1e-10,
                                     "min_value"));
    rep.records.push_back(max_record(tag + "unitary-invariance",
                                     "H_f(UXU*, UYU*) = H_f(X, Y)", unitary, 1e-9));
    rep.records.push_back(max_record(tag + "affine-invariance",
                                     "H_f unchanged when ax + b is added to f", affine,
                                     1e-9));
    rep.records.push_back(min_record(tag + "first-argument-convexity",
                                     "X -> H_f(X, Y) is convex", first_arg, 1e-9));
    rep.records.push_back(max_record(tag + "block-additivity",
                                     "divergence of block-diagonal pairs is the sum "
                                     "over blocks",
                                     block, 1e-9));
    rep.records.push_back(max_record(tag + "tensor-scaling",
                                     "H_f(A (x) I/n, B (x) I/n) = n H_f(A/n, B/n)",
                                     tensor_scale, 1e-9));
    if (has_homog)
      rep.records.push_back(max_record(tag + "homogeneity",
                                       "H_fq(lA, lB) = l^q H_fq(A, B), l in {1/2, 2}",
                                       homog, 1e-9));
    if (has_shift)
      rep.records.push_back(max_record(tag + "shifted-entropy-identity",
                                       "H_phi_l(X, Y) = H_phi_0(X + lI, Y + lI)", shift,
                                       1e-9));
    rep.records.push_back(max_record(tag + "frechet-vs-finite-difference",
                                     "divided-difference derivative vs central "
                                     "difference, h = 1e-5",
                                     fd, 1e-6));
    rep.records.push_back(max_record(tag + "frechet-vs-quadrature",
                                     "divided-difference derivative of f vs integral "
                                     "of f'(tL + (1-t)R)",
                                     q0, 1e-8));
    rep.records.push_back(max_record(tag + "derivative-of-fprime-vs-quadrature",
                                     "divided-difference derivative of f' vs integral "
                                     "of f''(tL + (1-t)R)",
                                     q1, 1e-8));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// entropy-class and counterexample-search

std::string criterion_anchor(Criterion c) {
  switch (c) {
    case Criterion::kConcavity:
      return "X -> (Df'[X])^-1 is operator concave";
    case Criterion::kJointConvexity:
      return "(X, Y) -> H_f(X, Y) is jointly convex";
    case Criterion::kQuadraticForm:
      return "(A, B) -> Tr B Df'[A](B) is jointly convex";
  }
  return "";
}

OrderedJson witness_json(const ConvexityReport& r) {
  OrderedJson w;
  w["criterion"] = to_string(r.criterion);
  w["trial"] = r.worst_witness.trial;
  w["t"] = r.worst_witness.t;
  w["min_slack"] = json_number(r.min_slack);
  OrderedJson mats = OrderedJson::array();
  for (const HermitianMatrix& m : r.worst_witness.matrices) {
    const nlohmann::json j = matrix_to_json(m);
    mats.push_back(OrderedJson::parse(j.dump()));
  }
  w["matrices"] = std::move(mats);
  return w;
}

std::string replay_command(const std::string& sub, const ConvexityReport& r) {
  std::ostringstream os;
  os << "bregmat " << sub << " --f " << r.family << " --dim " << r.dimension
     << " --trials " << r.trials << " --seed " << r.seed << " --criterion "
     << to_string(r.criterion);
  return os.str();
}

std::vector<Criterion> criteria_from(const std::string& text) {
  if (text == "both") return {Criterion::kConcavity, Criterion::kJointConvexity};
  if (text == "all")
    return {Criterion::kConcavity, Criterion::kJointConvexity, Criterion::kQuadraticForm};
  return {flag_value("--criterion", text, parse_criterion)};
}

Report entropy_class_suite(const RunConfig& cfg) {
  if (cfg.family.empty()) throw UsageError("entropy-class: --f is required");
  const auto fam = family_flag(cfg.family);
  const int n = cfg.dim.value_or(3);
  const std::uint64_t trials = cfg.trials.value_or(1000);
  const double tol = cfg.tol.value_or(kViolationTolerance);
  const std::string crit = cfg.criterion.empty() ? "both" : cfg.criterion;
  const auto criteria = criteria_from(crit);
  if (n < 1 || trials < 1) throw UsageError("entropy-class: --dim and --trials must be >= 1");

  Report rep;
  rep.config["f"] = fam.to_string();
  rep.config["dim"] = n;
  rep.config["trials"] = trials;
  rep.config["seed"] = cfg.seed;
  rep.config["tol"] = tol;
  rep.config["criterion"] = crit;
  rep.details["witnesses"] = OrderedJson::array();
  for (Criterion c : criteria) {
    const ConvexityReport cr =
        entropy_class_probe(fam, n, trials, cfg.seed, c, tol, cfg.threads);
    Record r;
    r.name = to_string(c);
    r.anchor = criterion_anchor(c);
    r.values["verdict"] = to_string(cr.verdict);
    r.values["min_slack"] = json_number(cr.min_slack);
    r.values["worst_trial"] = cr.worst_witness.trial;
    r.values["worst_t"] = cr.worst_witness.t;
    r.slack = cr.min_slack;
    r.tolerance = tol;
    r.pass = cr.verdict == Verdict::kHeld;
    rep.records.push_back(std::move(r));
    OrderedJson w = witness_json(cr);
    w["replay"] = replay_command("entropy-class", cr);
    rep.details["witnesses"].push_back(std::move(w));
  }
  return rep;
}

Report counterexample_search_suite(const RunConfig& cfg) {
  const auto fam =
      family_flag(cfg.family.empty() ? "tsallis:q=3" : cfg.family);
  const int n = cfg.dim.value_or(3);
  const std::uint64_t trials = cfg.trials.value_or(10000);
  const double tol = cfg.tol.value_or(kViolationTolerance);
  const std::string crit = cfg.criterion.empty() ? "concavity" : cfg.criterion;
  const auto criteria = criteria_from(crit);
  if (n < 1 || trials < 1)
    throw UsageError("counterexample-search: --dim and --trials must be >= 1");

  Report rep;
  rep.config["f"] = fam.to_string();
  rep.config["dim"] = n;
  rep.config["trials"] = trials;
  rep.config["seed"] = cfg.seed;
  rep.config["tol"] = tol;
  rep.config["criterion"] = crit;
  rep.details["witnesses"] = OrderedJson::array();
  for (Criterion c : criteria) {
    const ConvexityReport cr =
        entropy_class_probe(fam, n, trials, cfg.seed, c, tol, cfg.threads);
    const bool found = cr.verdict == Verdict::kViolated;
    Record r;
    r.name = "search/" + to_string(c);
    r.anchor = "search for a violation of: " + criterion_anchor(c);
    // Not finding one proves nothing, hence "inconclusive" and never "member".
    r.values["outcome"] = found ? "counterexample" : "inconclusive";
    r.values["min_slack"] = json_number(cr.min_slack);
    r.values["worst_trial"] = cr.worst_witness.trial;
    r.values["worst_t"] = cr.worst_witness.t;
    r.slack = cr.min_slack;
    r.tolerance = tol;
    r.pass = true;
    rep.records.push_back(std::move(r));
    OrderedJson w = witness_json(cr);
    w["replay"] = replay_command("counterexample-search", cr);
    rep.details["witnesses"].push_back(std::move(w));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// tsallis-ssa

constexpr const char* kWeightedSsaAnchor =
    "d3^(1-q) Tr r12^q + d1^(1-q) Tr r23^q <= Tr r123^q + (d1 d3)^(1-q) Tr r2^q, "
    "von Neumann strong subadditivity at q = 1";
constexpr const char* kDivergenceFormAnchor =
    "H_fq(r12 (x) I/d3, I/d1 (x) r2 (x) I/d3) <= H_fq(r123, I/d1 (x) r23), direct "
    "and trace-power evaluations agree";

std::string q_label(double q) {
  std::ostringstream os;
  os << "q=" << q;
  return os.str();
}

std::vector<double> q_grid_or(const RunConfig& cfg, std::vector<double> fallback) {
  return cfg.q_grid.empty() ? fallback : cfg.q_grid;
}

Report tsallis_ssa_suite(const RunConfig& cfg) {
  const std::vector<double> grid = q_grid_or(cfg, {1.0, 1.25, 1.5, 1.75, 2.0});
  for (double q : grid)
    if (!(q >= 1.0 && q <= 2.0))
      throw UsageError("tsallis-ssa: every --q must lie in [1, 2]");
  const int sources =
      (cfg.saturating ? 1 : 0) + (cfg.state_path.empty() ? 0 : 1) + (cfg.random ? 1 : 0);
  if (sources > 1)
    throw UsageError("tsallis-ssa: use at most one of --saturating, --state, --random");

  Report rep;
  rep.config["q"] = grid;
  rep.config["seed"] = cfg.seed;

  if (cfg.random) {
    const std::uint64_t count = *cfg.random;
    if (count < 1) throw UsageError("tsallis-ssa: --random must be >= 1");
    const std::vector<int> dims = cfg.dims.empty() ? std::vector<int>{2, 2, 2} : cfg.dims;
    if (dims.size() != 3) throw UsageError("tsallis-ssa: --dims needs three factors");
    const double tol = cfg.tol.value_or(1e-9);
    rep.config["source"] = "random";
    rep.config["states"] = count;
    rep.config["dims"] = dims;
    rep.config["tol"] = tol;

    struct Row {
      std::vector<double> slack, agreement, div_slack;
    };
    std::vector<Row> rows(count);
    parallel_for(count, cfg.threads, [&](std::size_t i) {
      Engine rng(derive_seed(cfg.seed, i));
      const TripartiteState st = random_tripartite(dims[0], dims[1], dims[2], rng);
      Row& row = rows[i];
      for (double q : grid) {
        row.slack.push_back(weighted_tsallis_ssa_check(q, st).slack);
        if (q > 1.0 + kQOneSwitch) {
          const SsaDivergenceSides s = ssa_divergence_sides(q, st);
          row.agreement.push_back(std::max(std::abs(s.direct_lhs - s.purity_lhs),
                                           std::abs(s.direct_rhs - s.purity_rhs)));
          row.div_slack.push_back(s.direct_rhs - s.direct_lhs);
        } else {
          row.agreement.push_back(0.0);
          row.div_slack.push_back(0.0);
        }
      }
    });
    for (size_t k = 0; k < grid.size(); ++k) {
      const double q = grid[k];
      MinTracker slack, div;
      MaxTracker agree;
      for (std::uint64_t i = 0; i < count; ++i) {
        slack.offer(rows[i].slack[k], i);
        div.offer(rows[i].div_slack[k], i);
        agree.offer(rows[i].agreement[k], i);
      }
      Record r = min_record("weighted-ssa/" + q_label(q), kWeightedSsaAnchor, slack, tol);
      r.values["q"] = q;
      r.values["convention"] = q > 1.0 + kQOneSwitch ? "trace powers" : "von Neumann";
      rep.records.push_back(std::move(r));
      if (q > 1.0 + kQOneSwitch) {
        Record d = min_record("divergence-form/" + q_label(q), kDivergenceFormAnchor, div, tol);
        d.values["q"] = q;
        d.values["max_direct_vs_trace_power"] = json_number(agree.value);
        d.pass = d.pass && agree.value <= 1e-9;
        rep.records.push_back(std::move(d));
      }
    }
    return rep;
  }

  const bool saturating = cfg.state_path.empty();
  const TripartiteState st = saturating
                                 ? saturating_state()
                                 : TripartiteState(load_density(cfg.state_path));
  const double tol = cfg.tol.value_or(1e-10);
  rep.config["source"] = saturating ? "saturating" : cfg.state_path;
  rep.config["tol"] = tol;

  for (double q : grid) {
    const bool vn = q <= 1.0 + kQOneSwitch;
    const WeightedSsaCheck c = weighted_tsallis_ssa_check(q, st);
    Record r;
    r.name = "weighted-ssa/" + q_label(q);
    r.anchor = kWeightedSsaAnchor;
    r.values["q"] = q;
    r.values["lhs"] = c.lhs;
    r.values["rhs"] = c.rhs;
    r.values["convention"] = vn ? "von Neumann" : "trace powers";
    r.slack = c.slack;
    r.tolerance = tol;
    r.pass = c.slack >= -tol;
    rep.records.push_back(std::move(r));

    if (saturating) {
      // Both sides in closed form: 2^(1-q)(1 + 4^(1-q)), and 2 ln 2 at q = 1.
      const double expected =
          vn ? 2.0 * std::numbers::ln2
             : std::pow(2.0, 1.0 - q) * (1.0 + std::pow(4.0, 1.0 - q));
      const double dev = std::max({std::abs(c.lhs - expected), std::abs(c.rhs - expected),
                                   std::abs(c.slack)});
      Record s;
      s.name = "saturation/" + q_label(q);
      s.anchor = "the rank-two (2,2,2) state turns the weighted inequality into an "
                 "equality";
      s.values["q"] = q;
      s.values["expected_side"] = expected;
      s.values["max_deviation"] = dev;
      s.slack = tol - dev;
      s.tolerance = tol;
      s.pass = dev <= tol;
      rep.records.push_back(std::move(s));
      if (!vn) {
        const double gap = plain_tsallis_ssa_gap(q, st);
        const double expected_gap = 1.0 + std::pow(4.0, 1.0 - q) - 2.0 * std::pow(2.0, 1.0 - q);
        Record g;
        g.name = "plain-ssa-failure/" + q_label(q);
        g.anchor = "Tr r12^q + Tr r23^q > Tr r123^q + Tr r2^q for this state: "
                   "unweighted Tsallis SSA fails";
        g.values["q"] = q;
        g.values["gap"] = gap;
        g.values["expected_gap"] = expected_gap;
        g.slack = gap;
        g.tolerance = tol;
        g.pass = gap > 0.0 && std::abs(gap - expected_gap) <= tol;
        rep.records.push_back(std::move(g));
      }
    }
    if (!vn) {
      const SsaDivergenceSides s = ssa_divergence_sides(q, st);
      const double agree = std::max(std::abs(s.direct_lhs - s.purity_lhs),
                                    std::abs(s.direct_rhs - s.purity_rhs));
      Record d;
      d.name = "divergence-form/" + q_label(q);
      d.anchor = kDivergenceFormAnchor;
      d.values["q"] = q;
      d.values["direct_lhs"] = json_number(s.direct_lhs);
      d.values["direct_rhs"] = json_number(s.direct_rhs);
      d.values["trace_power_lhs"] = s.purity_lhs;
      d.values["trace_power_rhs"] = s.purity_rhs;
      d.values["max_direct_vs_trace_power"] = json_number(agree);
      d.slack = s.direct_rhs - s.direct_lhs;
      d.tolerance = std::max(tol, 1e-9);
      d.pass = *d.slack >= -*d.tolerance && agree <= 1e-9;
      rep.records.push_back(std::move(d));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// monotonicity-demo

Report monotonicity_demo_suite(const RunConfig& cfg) {
  const std::vector<double> grid = q_grid_or(cfg, {1.25, 1.5, 2.0});
  for (double q : grid)
    if (!(q > 1.0 && q <= 2.0))
      throw UsageError("monotonicity-demo: every --q must lie in (1, 2]");
  const double tol = cfg.tol.value_or(1e-8);
  Report rep;
  rep.config["q"] = grid;
  rep.config["seed"] = cfg.seed;
  rep.config["tol"] = tol;
  for (double q : grid) {
    const MonotonicityDemo d = partial_trace_monotonicity_demo(q);
    const double dev = std::abs(d.ratio - d.expected_ratio);
    Record r;
    r.name = "partial-trace-increase/" + q_label(q);
    r.anchor = "H_fq(r12, I/2 (x) r2) = 2^(q-1) H_fq(r123, I/2 (x) r23) on the "
               "saturating state, so tracing out a factor increases the divergence";
    r.values["q"] = q;
    r.values["lhs"] = json_number(d.lhs);
    r.values["rhs"] = json_number(d.rhs);
    r.values["ratio"] = json_number(d.ratio);
    r.values["expected_ratio"] = d.expected_ratio;
    r.values["monotonicity_violated"] = d.monotonicity_violated;
    r.slack = tol - dev;
    r.tolerance = tol;
    r.pass = dev <= tol && d.monotonicity_violated;
    rep.records.push_back(std::move(r));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// contraction

Report contraction_suite(const RunConfig& cfg) {
  if (cfg.family.empty()) throw UsageError("contraction: --f is required");
  const auto fam = family_flag(cfg.family);
  if (!fam.continuous_at_zero())
    throw UsageError("contraction: family " + fam.to_string() +
                     " is not continuous at zero");
  const int n = cfg.dim.value_or(3);
  const std::uint64_t trials = cfg.trials.value_or(1000);
  const double tol = cfg.tol.value_or(1e-9);
  if (n < 1 || trials < 1) throw UsageError("contraction: --dim and --trials must be >= 1");

  Report rep;
  rep.config["f"] = fam.to_string();
  rep.config["dim"] = n;
  rep.config["trials"] = trials;
  rep.config["seed"] = cfg.seed;
  rep.config["tol"] = tol;

  std::vector<std::pair<double, double>> res(trials);
  parallel_for(trials, cfg.threads, [&](std::size_t i) {
    Engine rng(derive_seed(cfg.seed, i));
    const HermitianMatrix a = random_density(n, rng);
    const HermitianMatrix b = random_density(n, rng);
    const ComplexMatrix x = random_contraction(n, n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    res[i] = {contraction_monotonicity_check(fam, a, b, x),
              std::abs(contraction_monotonicity_check(fam, a, b, u))};
  });
  MinTracker slack;
  MaxTracker unitary;
  for (std::uint64_t i = 0; i < trials; ++i) {
    slack.offer(res[i].first, i);
    unitary.offer(res[i].second, i);
  }
  rep.records.push_back(min_record("contraction-monotonicity",
                                   "H_f(A, B) >= H_f(XAX*, XBX*) for contractions X "
                                   "(empirical)",
                                   slack, tol));
  rep.records.push_back(max_record("unitary-invariance",
                                   "H_f(UAU*, UBU*) = H_f(A, B)", unitary, tol,
                                   "max_abs_slack"));
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------

RunOutcome run(const RunConfig& cfg) {
  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    Report rep;
    if (cfg.subcommand == "divergence") {
      rep = divergence_suite(cfg);
    } else if (cfg.subcommand == "verify-identities") {
      rep = verify_identities_suite(cfg);
    } else if (cfg.subcommand == "entropy-class") {
      rep = entropy_class_suite(cfg);
    } else if (cfg.subcommand == "tsallis-ssa") {
      rep = tsallis_ssa_suite(cfg);
    } else if (cfg.subcommand == "monotonicity-demo") {
      rep = monotonicity_demo_suite(cfg);
    } else if (cfg.subcommand == "contraction") {
      rep = contraction_suite(cfg);
    } else if (cfg.subcommand == "counterexample-search") {
      rep = counterexample_search_suite(cfg);
    } else {
      throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
    }
    rep.subcommand = cfg.subcommand;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.exit_code = rep.all_pass() ? kExitOk : kExitViolation;
    out.report = std::move(rep);
  } catch (const NumericalFailure& e) {
    out.exit_code = kExitNumerical;
    out.error = std::string("numerical failure: ") + e.what();
  } catch (const ConditioningError& e) {
    out.exit_code = kExitNumerical;
    out.error = std::string("numerical failure: ") + e.what();
  } catch (const Error& e) {
    out.exit_code = kExitUsage;
    out.error = std::string("invalid input: ") + e.what();
  } catch (const std::invalid_argument& e) {
    out.exit_code = kExitUsage;
    out.error = std::string("usage: ") + e.what();
  }
  return out;
}

}  // namespace bregmat
