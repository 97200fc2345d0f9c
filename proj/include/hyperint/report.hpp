#pragma once
// Command layer shared by the CLI and the language bindings: run one verb
// against an instance and assemble a machine-readable JSON report (schema
// "hyperint/1") together with a one-line human summary and an exit code.
//
// Conventions: reports are deterministic and byte-identical across runs for
// identical inputs; rationals are serialized as "num/den" strings; integer
// values are JSON numbers when they fit in 53 bits and decimal strings
// otherwise; valuations are numbers (or "inf"). Exit codes: 0 for a positive
// verdict, 1 for a negative one. Invalid input is reported by exceptions
// (InvalidInstance and friends), which drivers map to exit code 2.

#include <json.hpp>

#include <optional>
#include <string>

#include "hyperint/dwork.hpp"
#include "hyperint/instance.hpp"

namespace hyperint {

using Json = nlohmann::ordered_json;

struct CommandResult {
  int exit_code = 0;
  Json report;
  std::string summary;
};

// Serialized form used in every report (exposed for tests and bindings).
Json json_rat(const Rat& q);
Json json_rat_vector(const RatVec& v);
Json json_int(const Int& x);
Json json_int_vector(const IntVec& v);
Json json_valuation(const Valuation& v);

// Renders a report exactly as the CLI writes it: 2-space indent, trailing
// newline.
std::string render_report(const Json& report);

// Orbit + weight-maximality certification with empirical prime checks.
CommandResult cmd_certify(const Instance& inst);

// Parameter orbit table only.
CommandResult cmd_orbit(const Instance& inst);

// Windowed series expansion at u = beta + shift with exact coefficient
// valuations at one prime. An empty shift means u = beta.
CommandResult cmd_expand(const Instance& inst, const IntVec& shift,
                         std::optional<unsigned long> prime);

// Numerical verification suite for the ramified p-adic layer.
CommandResult cmd_padic_selftest(const SelftestOptions& opt);

// Step-function analysis of a classical instance across its parameter orbit,
// cross-checked against the lattice criterion in exact mode.
CommandResult cmd_classical(const Instance& inst, std::optional<RhoMode> mode_override);

}  // namespace hyperint
