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

#include "bregmat/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

namespace bregmat {

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  size_t pos = 0;
  while (true) {
    const size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    T v{};
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw std::invalid_argument(std::string("malformed ") + what + " list '" + text + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct Flags {
  std::string family, x, y, state, dims, q, format = "json", out, method = "closed",
                                               criterion;
  std::optional<int> dim;
  std::optional<std::uint64_t> trials, seed, random;
  std::optional<double> tol;
  bool all_methods = false, saturating = false;
};

// Options shared by the subcommands; each subcommand only gets the ones it uses,
// so anything else is rejected by the parser.
enum Opt : unsigned {
  kF = 1u << 0,
  kX = 1u << 1,
  kY = 1u << 2,
  kState = 1u << 3,
  kDim = 1u << 4,
  kDims = 1u << 5,
  kQ = 1u << 6,
  kTrials = 1u << 7,
  kSeed = 1u << 8,
  kTol = 1u << 9,
  kMethod = 1u << 10,
  kAllMethods = 1u << 11,
  kSaturating = 1u << 12,
  kRandom = 1u << 13,
  kCriterion = 1u << 14,
};

void add_options(CLI::App* app, Flags& fl, unsigned which) {
  if (which & kF) app->add_option("--f", fl.family, "function family, e.g. tsallis:q=1.5");
  if (which & kX) app->add_option("--x", fl.x, "first matrix (JSON file)");
  if (which & kY) app->add_option("--y", fl.y, "second matrix (JSON file)");
  if (which & kState) app->add_option("--state", fl.state, "tripartite state (JSON file)");
  if (which & kDim) app->add_option("--dim", fl.dim, "matrix dimension");
  if (which & kDims) app->add_option("--dims", fl.dims, "tensor factors d1,d2,d3");
  if (which & kQ) app->add_option("--q", fl.q, "q value or comma-separated grid");
  if (which & kTrials) app->add_option("--trials", fl.trials, "number of sampled trials");
  if (which & kSeed) app->add_option("--seed", fl.seed, "64-bit campaign seed");
  if (which & kTol) app->add_option("--tol", fl.tol, "tolerance override");
  if (which & kMethod)
    app->add_option("--method", fl.method, "closed | eigen | integral-1d | integral-2d");
  if (which & kAllMethods)
    app->add_flag("--all-methods", fl.all_methods, "evaluate every representation");
  if (which & kSaturating)
    app->add_flag("--saturating", fl.saturating, "use the built-in saturating state");
  if (which & kRandom) app->add_option("--random", fl.random, "number of random states");
  if (which & kCriterion)
    app->add_option("--criterion", fl.criterion,
                    "concavity | joint-convexity | quadratic-form | both | all");
  app->add_option("--format", fl.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", fl.out, "output file (default: standard output)");
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  return parse_list<double>(text, "number");
}

std::vector<int> parse_int_list(const std::string& text) {
  return parse_list<int>(text, "integer");
}

unsigned threads_from_environment() {
  const char* env = std::getenv("BREGMAT_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const std::string text(env);
  unsigned v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::invalid_argument("BREGMAT_THREADS must be a nonnegative integer, got '" +
                                text + "'");
  return v;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace Bregman divergences, matrix entropy class probes and Tsallis "
               "entropy inequalities"};
  app.require_subcommand(1, 1);
  Flags fl;

  struct Sub {
    const char* name;
    const char* help;
    unsigned opts;
  };
  const Sub subs[] = {
      {"divergence", "trace Bregman divergence of two matrices", kF | kX | kY | kMethod | kAllMethods | kSeed | kTol},
      {"verify-identities", "cross-check representations and identities on random inputs",
       kF | kDim | kTrials | kSeed | kTol},
      {"entropy-class", "sample the matrix entropy class criteria",
       kF | kDim | kTrials | kSeed | kTol | kCriterion},
      {"tsallis-ssa", "dimension-weighted Tsallis strong subadditivity",
       kQ | kState | kSaturating | kRandom | kSeed | kDims | kTol},
      {"monotonicity-demo", "partial-trace monotonicity counterexample", kQ | kSeed | kTol},
      {"contraction", "monotonicity under contractive compressions",
       kF | kDim | kTrials | kSeed | kTol},
      {"counterexample-search", "random search for matrix entropy class violations",
       kF | kDim | kTrials | kSeed | kTol | kCriterion},
  };
  for (const Sub& s : subs) add_options(app.add_subcommand(s.name, s.help), fl, s.opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.family = fl.family;
    cfg.x_path = fl.x;
    cfg.y_path = fl.y;
    cfg.state_path = fl.state;
    cfg.dim = fl.dim;
    auto flagged = [](const char* flag, auto parse, const std::string& text) {
      try {
        return parse(text);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(flag) + ": " + e.what());
      }
    };
    if (!fl.dims.empty()) cfg.dims = flagged("--dims", parse_int_list, fl.dims);
    if (!fl.q.empty()) cfg.q_grid = flagged("--q", parse_number_list, fl.q);
    cfg.trials = fl.trials;
    cfg.seed = fl.seed.value_or(0);
    cfg.tol = fl.tol;
    cfg.format = fl.format;
    cfg.out = fl.out;
    cfg.method = fl.method;
    cfg.all_methods = fl.all_methods;
    cfg.saturating = fl.saturating;
    cfg.random = fl.random;
    cfg.criterion = fl.criterion;
    cfg.threads = threads_from_environment();
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  }

  const RunOutcome res = run(cfg);
  if (!res.report) {
    err << res.error << '\n';
    return res.exit_code;
  }
  const std::string text =
      cfg.format == "csv" ? render_csv(*res.report) : render_json(*res.report);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out);
    if (!file) {
      err << "cannot write '" << cfg.out << "'\n";
      return kExitUsage;
    }
    file << text;
  }
  return res.exit_code;
}

}  // namespace bregmat
