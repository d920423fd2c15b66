#pragma once

// JSON serialization for report structs (nlohmann/json, vendored).  Kept in
// its own header so the numeric core does not pull the JSON library in.
// ordered_json preserves insertion order, keeping output byte-stable.

#include <json.hpp>

#include "rgg/concentration.hpp"
#include "rgg/experiments.hpp"
#include "rgg/io.hpp"
#include "rgg/ordering.hpp"

namespace rgg {

using json = nlohmann::ordered_json;

inline json to_json(const DeviationReport& rep) {
  json j;
  j["schema"] = kOutputSchemaVersion;
  j["n"] = rep.n;
  j["d"] = rep.d;
  j["m"] = rep.m;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["threshold"] = rep.threshold;
  j["max_deviation"] = rep.max_deviation;
  j["pass_fraction"] = rep.pass_fraction;
  return j;
}

inline json to_json(const GapReport& rep) {
  json j;
  j["r"] = rep.r;
  j["d"] = rep.d;
  j["n"] = rep.n;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["gamma2"] = rep.gamma2;
  j["mean"] = rep.mean;
  j["min"] = rep.min;
  j["max"] = rep.max;
  return j;
}

inline json to_json(const GoodsetReport& rep) {
  json j;
  j["n"] = rep.n;
  j["r"] = rep.r;
  j["eps"] = rep.eps;
  j["inside"] = rep.inside;
  j["outside"] = rep.outside;
  j["boundary"] = rep.boundary;
  j["boundary_fraction"] = rep.boundary_fraction;
  j["violations"] = rep.violations;
  return j;
}

inline json to_json(const MultiplicityProfile& prof) {
  json j;
  j["d"] = prof.d;
  j["delta"] = prof.delta;
  j["counts"] = prof.counts;
  j["outside"] = prof.outside;
  return j;
}

inline json to_json(const BridgeReport& rep) {
  json j;
  j["degenerate"] = rep.degenerate;
  j["m"] = rep.m;
  j["sizes"] = rep.sizes;
  j["thresholds"] = rep.thresholds;
  j["counts"] = rep.counts;
  j["sandwich_ok"] = rep.sandwich_ok;
  return j;
}

}  // namespace rgg
