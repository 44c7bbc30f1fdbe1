#pragma once

// construct (or load) -> certify -> color -> verify, with every
// intermediate written to an output directory and a JSON summary.
//
// Exit codes: 0 all asserted verdicts pass, 1 usage or I/O error,
// 2 asserted verdict failed, 3 budget exhausted or partial result.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ripramsey/coloring.hpp"
#include "ripramsey/column_matrix.hpp"
#include "ripramsey/devore.hpp"
#include "ripramsey/ramsey.hpp"
#include "ripramsey/rip.hpp"

namespace ripramsey {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitViolation = 2, kExitPartial = 3 };

// ---- JSON records --------------------------------------------------------

inline nlohmann::json to_json(const ExactInnerProduct& v) {
  return {{"numerator", v.numerator}, {"denominator", v.denominator}, {"value", v.value()}};
}

inline nlohmann::json to_json(const CoherenceResult& c) {
  return {{"coherence", to_json(c.value)},
          {"witness", {c.witness_i, c.witness_j}},
          {"exact", c.exact},
          {"kind", c.exact ? "exact" : "bound"}};
}

inline nlohmann::json to_json(const RipCertificate& c) {
  nlohmann::json j = {{"method", method_name(c.method)},
                      {"s", c.s},
                      {"delta", c.delta},
                      {"valid", c.valid},
                      {"supports_checked", c.supports_checked},
                      {"witness_support", c.witness_support},
                      {"seed", c.seed ? nlohmann::json(*c.seed) : nlohmann::json(nullptr)},
                      {"lambda_min", c.lambda_min},
                      {"lambda_max", c.lambda_max}};
  if (c.method == RipMethod::Coherence) {
    j["coherence"] = c.coherence;
    j["gershgorin_delta"] = c.gershgorin_delta;
  }
  return j;
}

inline RipCertificate certificate_from_json(const nlohmann::json& j) {
  RipCertificate c;
  const std::string m = j.at("method").get<std::string>();
  if (m == "coherence") c.method = RipMethod::Coherence;
  else if (m == "exhaustive") c.method = RipMethod::Exhaustive;
  else if (m == "sampled") c.method = RipMethod::Sampled;
  else throw std::runtime_error("certificate: unknown method `" + m + "`");
  c.s = j.at("s").get<std::size_t>();
  c.delta = j.at("delta").get<double>();
  c.valid = c.delta < 1.0;
  c.supports_checked = j.value("supports_checked", index_t{0});
  c.witness_support = j.value("witness_support", std::vector<index_t>{});
  if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
  c.lambda_min = j.value("lambda_min", 1.0);
  c.lambda_max = j.value("lambda_max", 1.0);
  c.coherence = j.value("coherence", 0.0);
  c.gershgorin_delta = j.value("gershgorin_delta", 0.0);
  return c;
}

/// Exact DeVore certificate in the generic record shape, plus its rational.
inline nlohmann::json to_json(const DeVoreRipCertificate& c, const DeVoreParams& params) {
  RipCertificate g;
  g.method = RipMethod::Coherence;
  g.s = c.s;
  g.delta = c.delta.value();
  g.valid = c.valid;
  g.coherence = ExactInnerProduct{params.r(), params.z()}.value();
  g.gershgorin_delta = c.gershgorin_delta.value();
  g.lambda_min = 1.0 - g.gershgorin_delta;
  g.lambda_max = 1.0 + g.gershgorin_delta;
  nlohmann::json j = to_json(g);
  j["delta_exact"] = to_json(c.delta);
  j["gershgorin_exact"] = to_json(c.gershgorin_delta);
  j["gershgorin_valid"] = c.gershgorin_valid;
  return j;
}

inline nlohmann::json to_json(const RegimeReport& r) {
  return {{"z", r.z},
          {"epsilon", r.epsilon},
          {"r", r.r},
          {"n", r.n},
          {"p", r.p ? nlohmann::json(*r.p) : nlohmann::json(nullptr)},
          {"log_p", r.log_p},
          {"s", r.s},
          {"degenerate", r.degenerate},
          {"exponent", r.exponent},
          {"log_n", r.log_n},
          {"log_polylog_bound", r.log_polylog_bound},
          {"polylog_ok", r.polylog_ok},
          {"log_ratio_form", r.log_ratio_form}};
}

inline nlohmann::json to_json(const RamseyReport& r) {
  nlohmann::json colors = nlohmann::json::array();
  for (const auto& c : r.colors)
    colors.push_back({{"color", color_name(c.color)},
                      {"max_size", c.max_size},
                      {"witness", c.witness},
                      {"bound", c.bound},
                      {"verdict", verdict_name(verdict_of(c))},
                      {"asserted", c.asserted},
                      {"within_bound", c.within_bound},
                      {"search", c.exact ? "exact" : "lower-bound"},
                      {"nodes", c.nodes}});
  const auto& white = r.color(Color::White);
  return {{"p", r.p},
          {"n", r.n},
          {"palette", static_cast<int>(r.palette)},
          {"white_bound", r.white_bound},
          {"white_strict_ok", white.within_bound},
          {"white_crude_ok", r.white_crude_ok()},
          {"signed_bound", r.signed_bound},
          {"colors", colors},
          {"rip_context", r.rip_context ? to_json(*r.rip_context) : nlohmann::json(nullptr)},
          {"rip_asserted", r.rip_asserted},
          {"partial", r.partial}};
}

inline int exit_code_for(const RamseyReport& r) {
  if (r.has_violation()) return kExitViolation;
  if (r.partial) return kExitPartial;
  return kExitOk;
}

// ---- configuration -------------------------------------------------------

struct DeVoreSource {
  std::uint32_t z = 0, r = 0;
};
struct RandomSource {
  index_t n = 0, p = 0;
  Distribution dist = Distribution::Gaussian;
  std::uint64_t seed = 0;
};
struct FileSource {
  std::filesystem::path path;
};

struct PipelineConfig {
  std::variant<DeVoreSource, RandomSource, FileSource> source;
  std::optional<std::size_t> s;  // default: ceil(2 sqrt(n) + 1)
  RipMethod rip_method = RipMethod::Coherence;
  index_t trials = 10'000;
  std::uint64_t seed = 0;
  bool two_color = false;
  index_t support_budget = 1'000'000;
  std::uint64_t node_budget = 50'000'000;
  index_t dense_entry_budget = 50'000'000;
  double tol_edge = 1e-12;
  double tol_norm = ColumnMatrix::default_tol_norm;
  unsigned threads = 1;
  std::filesystem::path out_dir = "ripramsey-out";
};

struct PipelineResult {
  nlohmann::json summary;
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
};

/// Smallest integer s with s >= 2 sqrt(n) + 1.
inline std::size_t signed_bound_sparsity(index_t n) {
  const double b = 2.0 * std::sqrt(static_cast<double>(n)) + 1.0;
  auto s = static_cast<std::size_t>(std::ceil(b));
  while (s > 1 && static_cast<double>(s - 1) >= b) --s;
  while (static_cast<double>(s) < b) ++s;
  return s;
}

namespace detail {

struct StageError : std::runtime_error {
  StageError(std::string stage, const std::string& what, int code)
      : std::runtime_error(what), stage(std::move(stage)), code(code) {}
  std::string stage;
  int code;
};

template <class Fn>
auto run_stage(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const budget_exceeded& e) {
    throw StageError(stage, e.what(), kExitPartial);
  } catch (const std::exception& e) {
    throw StageError(stage, e.what(), kExitUsage);
  }
}

inline void write_text(const std::filesystem::path& path, const std::string& text,
                       std::vector<std::filesystem::path>& files) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  if (!os) throw std::runtime_error("write failed for " + path.string());
  files.push_back(path);
}

}  // namespace detail

inline PipelineResult run_full_pipeline(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  PipelineResult result;
  nlohmann::json& summary = result.summary;
  const fs::path marker = cfg.out_dir / ".partial";
  try {
    detail::run_stage("setup", [&] {
      fs::create_directories(cfg.out_dir);
      fs::remove(marker);
      return 0;
    });

    // construct / load
    std::optional<DeVoreParams> devore;
    std::optional<ColumnMatrix> dense;
    detail::run_stage("construct", [&] {
      std::ostringstream os;
      if (const auto* d = std::get_if<DeVoreSource>(&cfg.source)) {
        devore.emplace(d->z, d->r);
        write_structural(os, *devore);
        detail::write_text(cfg.out_dir / "matrix.devore", os.str(), result.files);
        summary["matrix"] = {{"kind", "devore"}, {"z", d->z}, {"r", d->r},
                             {"n", devore->rows()}, {"p", devore->cols()}};
        const bool need_dense = !cfg.two_color || cfg.rip_method != RipMethod::Coherence;
        if (need_dense) dense.emplace(devore_dense(*devore, cfg.dense_entry_budget));
      } else if (const auto* r = std::get_if<RandomSource>(&cfg.source)) {
        dense.emplace(random_baseline(r->n, r->p, r->dist, r->seed));
        write_dense(os, *dense);
        detail::write_text(cfg.out_dir / "matrix.dense", os.str(), result.files);
        summary["matrix"] = {{"kind", "random"}, {"distribution", distribution_name(r->dist)},
                             {"seed", r->seed}, {"n", r->n}, {"p", r->p}};
      } else {
        const auto& f = std::get<FileSource>(cfg.source);
        std::ifstream is(f.path);
        if (!is) throw std::runtime_error("cannot read " + f.path.string());
        dense.emplace(read_dense(is, ColumnMatrix::NormPolicy::Reject, cfg.tol_norm));
        summary["matrix"] = {{"kind", "file"}, {"path", f.path.string()},
                             {"n", dense->rows()}, {"p", dense->cols()}};
      }
      return 0;
    });
    const index_t n = devore ? devore->rows() : dense->rows();
    const std::size_t s = cfg.s.value_or(signed_bound_sparsity(n));

    // certify
    std::optional<RipCertificate> cert;
    detail::run_stage("certify", [&] {
      nlohmann::json cj;
      if (devore && cfg.rip_method == RipMethod::Coherence) {
        const auto exact = rip_certificate_coherence(*devore, s);
        cj = to_json(exact, *devore);
        cert = certificate_from_json(cj);
      } else {
        switch (cfg.rip_method) {
          case RipMethod::Coherence: cert = coherence_certificate(*dense, s); break;
          case RipMethod::Exhaustive:
            cert = delta_exhaustive(*dense, s, {cfg.support_budget, cfg.threads});
            break;
          case RipMethod::Sampled: cert = delta_sampled(*dense, s, cfg.trials, cfg.seed); break;
        }
        cj = to_json(*cert);
      }
      detail::write_text(cfg.out_dir / "certificate.json", cj.dump(2) + "\n", result.files);
      summary["certificate"] = cj;
      return 0;
    });

    // color
    std::optional<EdgeColoring> coloring;
    detail::run_stage("color", [&] {
      if (devore && cfg.two_color) {
        coloring.emplace(color_edges_exact_devore(*devore));
      } else {
        coloring.emplace(color_edges(
            *dense, {cfg.two_color ? Palette::TwoColor : Palette::ThreeColor, cfg.tol_edge, cfg.threads}));
      }
      std::ostringstream os;
      write_coloring(os, *coloring);
      detail::write_text(cfg.out_dir / "coloring.txt", os.str(), result.files);
      summary["threshold"] = devore ? 1.0 / (2.0 * devore->z()) : threshold(n);
      summary["boundary_edges"] = coloring->boundary_edges().size();
      return 0;
    });

    // verify
    const RamseyReport report = detail::run_stage("verify", [&] {
      return verify_ramsey(*coloring, n, cert, {{cfg.node_budget}});
    });
    const nlohmann::json rj = to_json(report);
    detail::write_text(cfg.out_dir / "report.json", rj.dump(2) + "\n", result.files);
    summary["report"] = rj;
    result.exit_code = exit_code_for(report);
  } catch (const detail::StageError& e) {
    summary["error"] = {{"stage", e.stage}, {"message", e.what()}};
    result.exit_code = e.code;
  }

  summary["exit_code"] = result.exit_code;
  try {
    if (result.exit_code == kExitPartial || summary.contains("error")) {
      std::ofstream(marker, std::ios::trunc)
          << (summary.contains("error") ? summary["error"]["stage"].get<std::string>() : "verify") << '\n';
      result.files.push_back(marker);
    }
    detail::write_text(cfg.out_dir / "summary.json", summary.dump(2) + "\n", result.files);
  } catch (const std::exception& e) {
    summary["error"] = {{"stage", "summary"}, {"message", e.what()}};
    result.exit_code = kExitUsage;
  }
  return result;
}

}  // namespace ripramsey
