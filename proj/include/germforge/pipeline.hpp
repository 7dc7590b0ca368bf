#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germforge/curve.hpp"
#include "germforge/hermitian.hpp"
#include "germforge/ideal.hpp"
#include "germforge/io.hpp"
#include "germforge/type_engine.hpp"
#include "germforge/unitary.hpp"
#include "germforge/weierstrass.hpp"

namespace germforge {

enum class Command { decompose, ratio, witness, search, codim, puiseux, lift, pipeline };

std::optional<Command> command_from_string(const std::string& name);

/// One CLI invocation.
struct JobSpec {
  Command command = Command::pipeline;
  std::vector<std::string> inputs;
  std::optional<std::string> unitary_path;
  std::optional<std::string> ideal_path;
  int precision = 50;
  int max_exponent = 3;
  int coeff_degree = 2;
  int maxnu = 2;
  int bound = 12;
  std::optional<std::string> output;
  bool exact_only = false;
  std::optional<std::string> certificate;
  /// Throws invalid_input for precision < 1 or negative bounds.
  void validate() const;
};

struct PipelineOptions {
  int precision = 50;   // witness order N
  int max_exponent = 3; // search A
  int coeff_degree = 2; // search d
  int bound = 12;       // codimension bound
  bool exact_only = false;
  std::optional<UnitaryBlock> unitary;
  std::optional<IdealPresentation> ideal;  // tried before the built ideals
  SearchOptions search;
};

struct PipelineResult {
  int exit_code = 1;  // 0 certified, 2 no witness at these bounds, 1 error
  std::string stage;  // failing stage when exit_code == 1
  std::string message;
  std::optional<FormalCurve> curve;
  std::optional<TypeRatio> best_ratio;
  Certificate bundle;
};

/// decompose -> unitary candidates -> build_ideal -> codimension ->
/// normal form -> Puiseux or prime lift -> witness_check.
PipelineResult run_pipeline(const HermitianForm& r, const PipelineOptions& options);

/// Exact base curve on p = 0 from a generic line and a Puiseux branch,
/// then the lift through the relations.
LiftResult lift_normal_form(const NormalForm& nf, int n, bool exact_only);

/// Re-runs witness_check from a certificate's embedded input and curve.
WitnessResult recheck_certificate(const Certificate& c);

}  // namespace germforge
