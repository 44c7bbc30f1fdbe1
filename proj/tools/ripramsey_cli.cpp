// ripramsey command-line entry point.
//
//   ripramsey construct --z 5 --r 1 -o m.devore
//   ripramsey export    --structural m.devore -o m.dense
//   ripramsey coherence --z 7 --r 2
//   ripramsey certify   --input m.dense --s 7 --method exhaustive
//   ripramsey color     --z 5 --r 1 -o c.txt
//   ripramsey cliques   --coloring c.txt --n 25 [--certificate cert.json]
//   ripramsey verify    --devore z=5 r=1 --two-color
//   ripramsey verify    --random n=8 p=14 seed=1 --s 7 --exhaustive
//   ripramsey kl-test   --n-max 20 --trials 1000
//   ripramsey random    --n 8 --p 14 --dist gaussian --seed 1 -o m.dense
//   ripramsey regime    --z 101 --epsilon 0.5

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ripramsey/ripramsey.hpp"

namespace {

using namespace ripramsey;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> parse_pairs(const std::vector<std::string>& tokens, const std::string& flag) {
  std::map<std::string, std::string> kv;
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(flag + ": expected key=value, got `" + t + "`");
    kv[t.substr(0, eq)] = t.substr(eq + 1);
  }
  return kv;
}

std::uint64_t require_u64(const std::map<std::string, std::string>& kv, const std::string& key,
                          const std::string& flag) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw UsageError(flag + ": missing " + key + "=");
  try {
    std::size_t used = 0;
    const auto v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(flag + ": bad value for " + key + ": `" + it->second + "`");
  }
}

/// Output stream: the file at `path`, or stdout when empty.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  return is;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic RIP matrices, threshold colorings and Ramsey clique bounds"};
  app.require_subcommand(1);
  unsigned threads = default_thread_count();
  app.add_option("--threads", threads, "Worker threads (default: RIPRAMSEY_THREADS or 1)")->check(CLI::PositiveNumber);

  std::uint32_t z = 0, r = 0;
  std::string out;

  // construct
  auto* construct = app.add_subcommand("construct", "Write the structural DeVore matrix file");
  construct->add_option("--z", z, "Prime modulus")->required();
  construct->add_option("--r", r, "Degree bound")->required();
  construct->add_option("-o,--output", out, "Output path (default stdout)");

  // export
  std::string structural;
  index_t max_entries = 50'000'000;
  auto* exporter = app.add_subcommand("export", "Dense text export of a DeVore matrix");
  exporter->add_option("--structural", structural, "Structural file");
  exporter->add_option("--z", z, "Prime modulus");
  exporter->add_option("--r", r, "Degree bound");
  exporter->add_option("--max-entries", max_entries, "Size guard on n*p")->capture_default_str();
  exporter->add_option("-o,--output", out, "Output path (default stdout)");

  // coherence
  index_t pair_budget = 200'000'000;
  auto* coherence = app.add_subcommand("coherence", "Exact DeVore coherence");
  coherence->add_option("--z", z, "Prime modulus")->required();
  coherence->add_option("--r", r, "Degree bound")->required();
  coherence->add_option("--budget", pair_budget, "Maximum column pairs to enumerate")->capture_default_str();

  // certify
  std::string input, method = "coherence";
  std::size_t s = 0;
  index_t trials = 10'000, support_budget = 1'000'000;
  std::uint64_t seed = 0;
  double tol_norm = ColumnMatrix::default_tol_norm;
  auto* certify = app.add_subcommand("certify", "RIP certificate for a DeVore or dense matrix");
  certify->add_option("--input", input, "Dense matrix file");
  certify->add_option("--z", z, "Prime modulus (DeVore rule s*r/z)");
  certify->add_option("--r", r, "Degree bound");
  certify->add_option("--s", s, "Sparsity")->required()->check(CLI::PositiveNumber);
  certify->add_option("--method", method, "coherence | exhaustive | sampled")
      ->check(CLI::IsMember({"coherence", "exhaustive", "sampled"}))
      ->capture_default_str();
  certify->add_option("--trials", trials, "Sampled supports")->capture_default_str();
  certify->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  certify->add_option("--budget", support_budget, "Exhaustive support budget")->capture_default_str();
  certify->add_option("--tol-norm", tol_norm, "Column norm tolerance")->capture_default_str();

  // color
  bool two_color = false;
  double tol_edge = 1e-12;
  auto* color = app.add_subcommand("color", "Threshold edge coloring");
  color->add_option("--input", input, "Dense matrix file");
  color->add_option("--z", z, "Prime modulus (exact integer DeVore path)");
  color->add_option("--r", r, "Degree bound");
  color->add_flag("--two-color", two_color, "Two-color palette (nonnegative matrices)");
  color->add_option("--tol-edge", tol_edge, "Boundary tolerance")->capture_default_str();
  color->add_option("--tol-norm", tol_norm, "Column norm tolerance")->capture_default_str();
  color->add_option("-o,--output", out, "Output path (default stdout)");

  // cliques
  std::string coloring_path, certificate_path;
  index_t n_rows = 0;
  std::uint64_t node_budget = 50'000'000;
  auto* cliques = app.add_subcommand("cliques", "Exact monochromatic cliques and Ramsey verdicts");
  cliques->add_option("--coloring", coloring_path, "Coloring file")->required();
  cliques->add_option("--n", n_rows, "Row count of the underlying matrix")->required()->check(CLI::PositiveNumber);
  cliques->add_option("--certificate", certificate_path, "RIP certificate JSON");
  cliques->add_option("--node-budget", node_budget, "Branch-and-bound node limit")->capture_default_str();
  cliques->add_option("-o,--output", out, "Report path (default stdout)");

  // verify
  std::vector<std::string> devore_kv, random_kv;
  bool exhaustive = false, sampled = false;
  std::string out_dir = "ripramsey-out";
  auto* verify = app.add_subcommand("verify", "Full pipeline: construct, certify, color, verify");
  verify->add_option("--devore", devore_kv, "z=<prime> r=<degree>")->expected(2);
  verify->add_option("--random", random_kv, "n=<rows> p=<cols> seed=<seed> [dist=<gaussian|rademacher|tight-frame>]")
      ->expected(3, 4);
  verify->add_option("--input", input, "Dense matrix file");
  verify->add_option("--s", s, "Sparsity for the RIP certificate (default ceil(2 sqrt(n)+1))");
  verify->add_flag("--exhaustive", exhaustive, "Exhaustive RIP constant");
  verify->add_flag("--sampled", sampled, "Sampled RIP lower bound");
  verify->add_option("--trials", trials, "Sampled supports")->capture_default_str();
  verify->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  verify->add_flag("--two-color", two_color, "Two-color palette");
  verify->add_option("--budget", support_budget, "Exhaustive support budget")->capture_default_str();
  verify->add_option("--node-budget", node_budget, "Branch-and-bound node limit")->capture_default_str();
  verify->add_option("--tol-edge", tol_edge, "Boundary tolerance")->capture_default_str();
  verify->add_option("--tol-norm", tol_norm, "Column norm tolerance")->capture_default_str();
  verify->add_option("--out-dir", out_dir, "Directory for artifacts")->capture_default_str();

  // kl-test
  std::int64_t n_min = 1, n_max = 20;
  std::string family = "gaussian";
  bool quiet = false;
  index_t kl_trials = 1000;
  auto* kl = app.add_subcommand("kl-test", "Property harness for the 2n-vector coherence bound");
  kl->add_option("--n-min", n_min, "Smallest dimension")->capture_default_str()->check(CLI::PositiveNumber);
  kl->add_option("--n-max", n_max, "Largest dimension")->capture_default_str()->check(CLI::PositiveNumber);
  kl->add_option("--trials", kl_trials, "Trials per dimension")->capture_default_str();
  kl->add_option("--seed", seed, "Master seed")->capture_default_str();
  kl->add_option("--family", family, "gaussian | perturbed-frames | two-bases")
      ->check(CLI::IsMember({"gaussian", "perturbed-frames", "two-bases"}))
      ->capture_default_str();
  kl->add_flag("--quiet", quiet, "Summary only");

  // random
  index_t p_cols = 0;
  std::string dist = "gaussian";
  auto* random = app.add_subcommand("random", "Seeded random matrix with unit-norm columns");
  random->add_option("--n", n_rows, "Rows")->required()->check(CLI::PositiveNumber);
  random->add_option("--p", p_cols, "Columns")->required();
  random->add_option("--dist", dist, "gaussian | rademacher | tight-frame")
      ->check(CLI::IsMember({"gaussian", "rademacher", "tight-frame"}))
      ->capture_default_str();
  random->add_option("--seed", seed, "Seed")->capture_default_str();
  random->add_option("-o,--output", out, "Output path (default stdout)");

  // regime
  std::uint64_t regime_z = 0;
  double epsilon = 0.0;
  auto* regime = app.add_subcommand("regime", "Parameters of the construction for r = ceil(z^eps)");
  regime->add_option("--z", regime_z, "Prime")->required();
  regime->add_option("--epsilon", epsilon, "Exponent in (0, 1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*construct) {
      Output o(out);
      write_structural(o.stream(), DeVoreParams(z, r));
      return kExitOk;
    }

    if (*exporter) {
      std::optional<DeVoreParams> params;
      if (!structural.empty()) {
        auto is = open_input(structural);
        params.emplace(read_structural(is));
      } else if (z != 0) {
        params.emplace(z, r);
      } else {
        throw UsageError("export: give --structural or --z/--r");
      }
      const ColumnMatrix m = devore_dense(*params, max_entries);
      Output o(out);
      write_dense(o.stream(), m);
      return kExitOk;
    }

    if (*coherence) {
      const DeVoreParams params(z, r);
      const CoherenceResult c = coherence_or_bound(params, pair_budget, threads);
      std::cout << to_json(c).dump(2) << '\n';
      return c.exact ? kExitOk : kExitPartial;
    }

    if (*certify) {
      nlohmann::json j;
      if (!input.empty()) {
        auto is = open_input(input);
        const ColumnMatrix m = read_dense(is, ColumnMatrix::NormPolicy::Reject, tol_norm);
        RipCertificate c;
        if (method == "coherence") c = coherence_certificate(m, s);
        else if (method == "exhaustive") c = delta_exhaustive(m, s, {support_budget, threads});
        else c = delta_sampled(m, s, trials, seed);
        j = to_json(c);
      } else if (z != 0) {
        if (method != "coherence") throw UsageError("certify: --z/--r supports --method coherence only; export first");
        const DeVoreParams params(z, r);
        j = to_json(rip_certificate_coherence(params, s), params);
      } else {
        throw UsageError("certify: give --input or --z/--r");
      }
      std::cout << j.dump(2) << '\n';
      return kExitOk;
    }

    if (*color) {
      std::optional<EdgeColoring> c;
      if (!input.empty()) {
        auto is = open_input(input);
        const ColumnMatrix m = read_dense(is, ColumnMatrix::NormPolicy::Reject, tol_norm);
        c.emplace(color_edges(m, {two_color ? Palette::TwoColor : Palette::ThreeColor, tol_edge, threads}));
      } else if (z != 0) {
        c.emplace(color_edges_exact_devore(DeVoreParams(z, r)));
      } else {
        throw UsageError("color: give --input or --z/--r");
      }
      Output o(out);
      write_coloring(o.stream(), *c);
      if (!c->boundary_edges().empty())
        std::cerr << c->boundary_edges().size() << " boundary-ambiguous edge(s) classified White\n";
      return kExitOk;
    }

    if (*cliques) {
      auto is = open_input(coloring_path);
      const EdgeColoring c = read_coloring(is);
      std::optional<RipCertificate> cert;
      if (!certificate_path.empty()) {
        auto cs = open_input(certificate_path);
        cert = certificate_from_json(nlohmann::json::parse(cs));
      }
      const RamseyReport rep = verify_ramsey(c, n_rows, cert, {{node_budget}});
      Output o(out);
      o.stream() << to_json(rep).dump(2) << '\n';
      return exit_code_for(rep);
    }

    if (*verify) {
      PipelineConfig cfg;
      const int sources = !devore_kv.empty() + !random_kv.empty() + !input.empty();
      if (sources != 1) throw UsageError("verify: give exactly one of --devore, --random, --input");
      if (exhaustive && sampled) throw UsageError("verify: --exhaustive and --sampled are exclusive");
      if (!devore_kv.empty()) {
        const auto kv = parse_pairs(devore_kv, "--devore");
        cfg.source = DeVoreSource{static_cast<std::uint32_t>(require_u64(kv, "z", "--devore")),
                                  static_cast<std::uint32_t>(require_u64(kv, "r", "--devore"))};
      } else if (!random_kv.empty()) {
        const auto kv = parse_pairs(random_kv, "--random");
        RandomSource rs;
        rs.n = require_u64(kv, "n", "--random");
        rs.p = require_u64(kv, "p", "--random");
        rs.seed = require_u64(kv, "seed", "--random");
        if (const auto it = kv.find("dist"); it != kv.end()) rs.dist = parse_distribution(it->second);
        cfg.source = rs;
      } else {
        cfg.source = FileSource{input};
      }
      if (s != 0) cfg.s = s;
      cfg.rip_method = exhaustive ? RipMethod::Exhaustive : sampled ? RipMethod::Sampled : RipMethod::Coherence;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.two_color = two_color;
      cfg.support_budget = support_budget;
      cfg.node_budget = node_budget;
      cfg.tol_edge = tol_edge;
      cfg.tol_norm = tol_norm;
      cfg.threads = threads;
      cfg.out_dir = out_dir;
      const PipelineResult res = run_full_pipeline(cfg);
      std::cout << res.summary.dump(2) << '\n';
      return res.exit_code;
    }

    if (*kl) {
      if (n_min > n_max) throw UsageError("kl-test: --n-min exceeds --n-max");
      const FamilyKind kind = parse_family(family);
      index_t total = 0, violations = 0, trace_violations = 0;
      for (std::int64_t n = n_min; n <= n_max; ++n)
        for (index_t t = 0; t < kl_trials; ++t) {
          const KlTrial tr = kl_trial(n, kind, trial_seed(seed, std::uint64_t(n), t));
          ++total;
          violations += !tr.ok;
          trace_violations += !tr.audit.consistent;
          if (!quiet)
            std::cout << "n=" << n << " max=" << std::setprecision(17) << tr.max << " bound=" << tr.bound
                      << " ok=" << (tr.ok ? "true" : "false") << '\n';
        }
      std::cout << "summary trials=" << total << " violations=" << violations
                << " trace_violations=" << trace_violations << '\n';
      return (violations || trace_violations) ? kExitViolation : kExitOk;
    }

    if (*random) {
      const ColumnMatrix m = random_baseline(n_rows, p_cols, parse_distribution(dist), seed);
      Output o(out);
      write_dense(o.stream(), m);
      return kExitOk;
    }

    if (*regime) {
      std::cout << to_json(regime_calculator(regime_z, epsilon)).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const budget_exceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitPartial;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
