#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "trajsample/types.hpp"

namespace trajsample {

/// Formats a value with 9 significant digits, for CSV cells.
std::string format_double(double value);

/// One scenario as a single JSON line:
///   {"scenario_id": ..., "horizon": T, "ground_truth": [[x,y],...]?,
///    "models": [{"model_id": ..., "proposals":
///                 [{"weight": w, "points": [[x,y],...]}, ...]}, ...]}
/// Coordinates and weights round-trip exactly (shortest-round-trip decimal).
std::string serialize_scenario(const Scenario& scenario);

std::string serialize_scenarios(const std::vector<Scenario>& dataset);

void write_scenario_file(const std::string& path,
                         const std::vector<Scenario>& dataset);

/// Parses line-delimited scenarios. Strict: every structural problem raises
/// Malformed, InconsistentHorizon or EmptyEnsemble carrying the 1-based line
/// number. An empty stream yields an empty dataset.
std::vector<Scenario> parse_scenarios(std::istream& in);

std::vector<Scenario> parse_scenario_file(const std::string& path);

/// Sampler output for one scenario, serialized as
///   {"scenario_id": ..., "candidates": [[[x,y],...], ...]}
/// with candidates ordered most-preferred first.
using NamedCandidates = std::pair<std::string, CandidateSet>;

std::string serialize_candidates(const NamedCandidates& row);

void write_candidates_file(const std::string& path,
                           const std::vector<NamedCandidates>& rows);

std::vector<NamedCandidates> parse_candidates_file(const std::string& path);

}  // namespace trajsample
