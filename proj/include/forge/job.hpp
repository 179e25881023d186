#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "forge/intertwine.hpp"
#include "forge/kleingordon.hpp"
#include "forge/verify.hpp"

namespace forge {

using Json = nlohmann::json;

/// A single job: one command plus its settings, parsed from a JSON document.
/// Rationals are written as integers or "p/q" strings; expressions use the
/// text grammar of parse_expr, with `constants` substituted at parse time.
struct JobConfig {
  std::string command;
  std::uint64_t seed = 0xC0FFEE;
  unsigned precision = 30;
  ZeroTestOptions zero_opts;
  ParseOptions parse_opts;
  Json raw;  // canonical echo of the parsed config

  Expr parse(const std::string& text) const { return parse_expr(text, parse_opts); }
};

JobConfig parse_job_config(const Json& document);

struct RunReport {
  Json json;
  bool passed = false;
};

/// Dispatches the job, writes side-effect files under out_dir, and returns
/// the report. Reports are deterministic for a fixed config and seed apart
/// from the timing_ms field. Mathematical failures surface as failing
/// verdicts; configuration problems throw Error(Config/Parse).
RunReport run(const JobConfig& config, const std::string& out_dir = ".");

/// CSV dump "x,V,W" of a chain node's potentials over a grid; singular points
/// are skipped. Returns (rows written, rows skipped).
std::pair<int, int> emit_plot_data(const KGChainNode& node, const Grid1D& grid,
                                   const std::string& path, unsigned precision = 30);

// -- serialization ------------------------------------------------------------

Json to_json(const DiffOp& op);
Json to_json(const OpEqualResult& r);
Json to_json(const ZeroResult& r);
Json to_json(const IntertwiningResult& r);
Json to_json(const Lemma2Result& r);
Json to_json(const KGChainNode& node);
Json to_json(const ResidualReport& r);
Json to_json(const CatalogValidation& v);

DiffOp diffop_from_json(const Json& j, const ParseOptions& opts, const ZeroTestOptions& zopts);

/// True for verdict strings that count as passing ("equal", "Zero", "pass",
/// "exact", "validated").
bool verdict_passes(const std::string& verdict);

Rational rational_from_json(const Json& j);

}  // namespace forge
