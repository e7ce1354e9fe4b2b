#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trajsample {

/// Base class of all library errors. `line` is nonzero when the error was
/// raised while parsing a scenario file and refers to the 1-based line.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }
  virtual const char* code() const noexcept { return "error"; }

 private:
  std::size_t line_;
};

/// Every weight of a model prediction is zero; nothing to normalize.
class AllZeroWeights : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "all_zero_weights"; }
};

/// A mixture was built from zero models, or a model carries no proposals.
class EmptyEnsemble : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "empty_ensemble"; }
};

/// Trajectories within one scenario disagree on the number of timesteps.
class InconsistentHorizon : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "inconsistent_horizon"; }
};

/// Two trajectories passed to a pairwise metric differ in length.
class HorizonMismatch : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "horizon_mismatch"; }
};

/// k exceeds the number of candidates available for a min-of-k metric.
class KExceedsSetSize : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "k_exceeds_set_size"; }
};

/// k exceeds the number of pooled proposals.
class KExceedsProposals : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "k_exceeds_proposals"; }
};

/// k exceeds the number of proposals with positive weight.
class KExceedsPositiveSupport : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override {
    return "k_exceeds_positive_support";
  }
};

/// A scenario lacks the ground-truth trajectory required for evaluation.
class MissingGroundTruth : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "missing_ground_truth"; }
};

/// The exhaustive subset oracle was asked to enumerate too large a pool.
class TooManyProposals : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "too_many_proposals"; }
};

/// Malformed input data (bad JSON, negative weight, non-finite coordinate).
class Malformed : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "malformed"; }
};

/// Invalid run configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }
  const char* code() const noexcept override { return "config"; }

 private:
  std::string field_;
};

}  // namespace trajsample
