#include "trajsample/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trajsample/errors.hpp"

namespace trajsample {

namespace {

using json = nlohmann::ordered_json;

json trajectory_to_json(const Trajectory& trajectory) {
  json points = json::array();
  for (const Vec2& p : trajectory) points.push_back(json::array({p.x, p.y}));
  return points;
}

Trajectory trajectory_from_json(const json& points, const char* what,
                                std::size_t line) {
  if (!points.is_array() || points.empty()) {
    throw Malformed(std::string(what) + " must be a non-empty array of points",
                    line);
  }
  Trajectory out;
  out.reserve(points.size());
  for (const json& point : points) {
    if (!point.is_array() || point.size() != 2 || !point[0].is_number() ||
        !point[1].is_number()) {
      throw Malformed(std::string(what) + " points must be [x, y] pairs", line);
    }
    const double x = point[0].get<double>();
    const double y = point[1].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw Malformed(std::string(what) + " has a non-finite coordinate", line);
    }
    out.push_back({x, y});
  }
  return out;
}

Scenario parse_record(const std::string& text, std::size_t line) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::exception& e) {
    throw Malformed(e.what(), line);
  }
  if (!record.is_object()) throw Malformed("record must be a JSON object", line);
  if (!record.contains("scenario_id") || !record["scenario_id"].is_string()) {
    throw Malformed("missing string field: scenario_id", line);
  }
  if (!record.contains("horizon") || !record["horizon"].is_number_integer()) {
    throw Malformed("missing integer field: horizon", line);
  }
  const int horizon = record["horizon"].get<int>();
  if (horizon < 1) throw Malformed("horizon must be at least 1", line);

  Scenario scenario;
  scenario.scenario_id = record["scenario_id"].get<std::string>();

  const auto check_horizon = [&](const Trajectory& trajectory, const char* what) {
    if (trajectory.size() != static_cast<std::size_t>(horizon)) {
      throw InconsistentHorizon(
          std::string(what) + " has " + std::to_string(trajectory.size()) +
              " points, expected " + std::to_string(horizon),
          line);
    }
  };

  if (record.contains("ground_truth") && !record["ground_truth"].is_null()) {
    Trajectory gt =
        trajectory_from_json(record["ground_truth"], "ground_truth", line);
    check_horizon(gt, "ground_truth");
    scenario.ground_truth = std::move(gt);
  }

  if (!record.contains("models") || !record["models"].is_array()) {
    throw Malformed("missing array field: models", line);
  }
  if (record["models"].empty()) {
    throw EmptyEnsemble("record has no models", line);
  }

  std::vector<ModelPrediction> models;
  models.reserve(record["models"].size());
  for (const json& model : record["models"]) {
    if (!model.is_object() || !model.contains("model_id") ||
        !model["model_id"].is_string()) {
      throw Malformed("model entries need a string model_id", line);
    }
    ModelPrediction prediction;
    prediction.model_id = model["model_id"].get<std::string>();
    if (!model.contains("proposals") || !model["proposals"].is_array()) {
      throw Malformed("model " + prediction.model_id +
                          " needs a proposals array",
                      line);
    }
    if (model["proposals"].empty()) {
      throw EmptyEnsemble("model " + prediction.model_id + " has no proposals",
                          line);
    }
    for (const json& proposal : model["proposals"]) {
      if (!proposal.is_object() || !proposal.contains("weight") ||
          !proposal["weight"].is_number() || !proposal.contains("points")) {
        throw Malformed("proposals need a numeric weight and points", line);
      }
      const double weight = proposal["weight"].get<double>();
      if (!std::isfinite(weight) || weight < 0.0) {
        throw Malformed("proposal weights must be finite and non-negative",
                        line);
      }
      Trajectory trajectory =
          trajectory_from_json(proposal["points"], "proposal", line);
      check_horizon(trajectory, "proposal");
      prediction.proposals.push_back({weight, std::move(trajectory)});
    }
    models.push_back(std::move(prediction));
  }

  try {
    scenario.mixture = build_mixture(std::move(models));
  } catch (const AllZeroWeights& e) {
    throw AllZeroWeights(e.what(), line);
  }
  return scenario;
}

bool blank(const std::string& text) {
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string serialize_scenario(const Scenario& scenario) {
  json record;
  record["scenario_id"] = scenario.scenario_id;
  record["horizon"] = scenario.mixture.horizon;
  if (scenario.ground_truth) {
    record["ground_truth"] = trajectory_to_json(*scenario.ground_truth);
  }
  json models = json::array();
  for (const ModelPrediction& model : scenario.mixture.models) {
    json entry;
    entry["model_id"] = model.model_id;
    json proposals = json::array();
    for (const WeightedProposal& proposal : model.proposals) {
      json p;
      p["weight"] = proposal.weight;
      p["points"] = trajectory_to_json(proposal.trajectory);
      proposals.push_back(std::move(p));
    }
    entry["proposals"] = std::move(proposals);
    models.push_back(std::move(entry));
  }
  record["models"] = std::move(models);
  return record.dump();
}

std::string serialize_scenarios(const std::vector<Scenario>& dataset) {
  std::string out;
  for (const Scenario& scenario : dataset) {
    out += serialize_scenario(scenario);
    out += '\n';
  }
  return out;
}

void write_scenario_file(const std::string& path,
                         const std::vector<Scenario>& dataset) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << serialize_scenarios(dataset);
  if (!out) throw Error("write failed: " + path);
}

std::vector<Scenario> parse_scenarios(std::istream& in) {
  std::vector<Scenario> dataset;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    dataset.push_back(parse_record(text, line));
  }
  return dataset;
}

std::vector<Scenario> parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  return parse_scenarios(in);
}

std::string serialize_candidates(const NamedCandidates& row) {
  json record;
  record["scenario_id"] = row.first;
  json sets = json::array();
  for (const Trajectory& candidate : row.second) {
    sets.push_back(trajectory_to_json(candidate));
  }
  record["candidates"] = std::move(sets);
  return record.dump();
}

void write_candidates_file(const std::string& path,
                           const std::vector<NamedCandidates>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  for (const NamedCandidates& row : rows) {
    out << serialize_candidates(row) << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

std::vector<NamedCandidates> parse_candidates_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path);
  std::vector<NamedCandidates> rows;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::exception& e) {
      throw Malformed(e.what(), line);
    }
    if (!record.is_object() || !record.contains("scenario_id") ||
        !record["scenario_id"].is_string() || !record.contains("candidates") ||
        !record["candidates"].is_array()) {
      throw Malformed("candidate records need scenario_id and candidates",
                      line);
    }
    NamedCandidates row;
    row.first = record["scenario_id"].get<std::string>();
    for (const json& candidate : record["candidates"]) {
      row.second.push_back(trajectory_from_json(candidate, "candidate", line));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace trajsample
