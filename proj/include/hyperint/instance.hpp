#pragma once
// Instance files: a JSON description of a certification problem, given either
// as an explicit generator configuration ("aset") or as a classical
// coefficient matrix with offsets ("classical"), plus optional run controls
// (primes, expansion window, p-adic precision, step-function mode). Classical
// instances are embedded into a generator configuration on load, so every
// instance carries (cfg, v, D, h) ready for the pipelines.

#include <optional>
#include <string>
#include <vector>

#include "hyperint/classical.hpp"
#include "hyperint/series.hpp"

namespace hyperint {

struct Instance {
  std::string kind;  // "aset" or "classical"
  std::string name;  // optional label, echoed into reports
  long D = 1;
  long h = 1;
  GeneratorConfig cfg;
  RatVec v;  // length cfg.N, entries in [-1,0] with D*v integral
  std::optional<ClassicalInstance> classical;  // original data for "classical"

  std::optional<std::vector<unsigned long>> primes;
  std::optional<long> window;
  std::optional<long> precision;
  std::optional<RhoMode> rho_mode;
};

// Parses and validates an instance from JSON text. Throws InvalidInstance on
// malformed JSON, schema violations, or data failing the library invariants.
Instance parse_instance(const std::string& json_text);

// Reads the file and parses it. Throws InvalidInstance when unreadable.
Instance load_instance(const std::string& path);

// The first `count` primes p with p ≡ h (mod D) and every v_j p-integral.
std::vector<unsigned long> default_primes(const Instance& inst, long count = 4);

}  // namespace hyperint
