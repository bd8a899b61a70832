#pragma once

#include "torcx/diophantine.hpp"
#include "torcx/operator.hpp"
#include "torcx/symbol.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace torcx {

/// Real input: JSON numbers and "p/q" strings are exact, decimal strings carry
/// +-10^{-d}, and objects build constants:
///   {"golden": D}, {"liouville": D}, {"factorial_series": {"base": b, "digits": D}},
///   {"root": {"of": r, "index": m, "digits": D}}, {"sum": [...]}, {"product": [...]}.
HighPrecisionReal real_from_json(const nlohmann::json& j, const std::string& path = "");

struct ComplexInput {
  HighPrecisionReal re;
  HighPrecisionReal im;
  GaussRational value() const { return {re.mid(), im.mid()}; }
  bool is_real() const { return im.is_exact() && sgn(im.lo) == 0; }
};

/// A real input, or {"re": real, "im": real}.
ComplexInput complex_input_from_json(const nlohmann::json& j, const std::string& path = "");

struct LoadedSystem {
  explicit LoadedSystem(SystemSpec s) : spec(std::move(s)) {}
  std::string name;
  SystemSpec spec;
  std::optional<CoefficientProfile<GaussRational>> profile;
  /// Symbols p_j = a_j xi (N = 1); a_j kept at input precision.
  std::optional<std::vector<ComplexInput>> linear;
  /// Symbols p_j = c_j |xi|^{rho/mu} (N = 1) with a common exponent.
  struct Homogeneous {
    std::vector<ComplexInput> c;
    int rho = 1;
    int mu = 1;
  };
  std::optional<Homogeneous> homogeneous;
  int digits = 0;  // largest input precision, 0 when every input is exact
};

/// {"named": "..."} or {n, N, symbols: [...], coefficients: [...]}.
LoadedSystem system_from_json(const nlohmann::json& j);

/// Names accepted by {"named": ...}.
std::vector<std::string> named_systems();

struct Tolerances {
  double eps = 1e-10;
  double eps_int = 1e-9;
  double compat_eps = 1e-9;
  double eps_zero = 1e-12;
  double lambda_max = 2.5;
  double residual = 1e-10;
  nlohmann::json to_json() const;
};

struct Config {
  nlohmann::json raw;
  std::string name;
  std::optional<LoadedSystem> system;
  FrequencyBox box;
  Tolerances tol;
  bool exact = false;
  std::uint64_t seed = 1;
  nlohmann::json analyze = nlohmann::json::object();
  nlohmann::json solve = nlohmann::json::object();
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json reduce = nlohmann::json::object();
  std::string base_dir;  // relative file references resolve here

  const LoadedSystem& sys() const { return *system; }
};

/// Parse and validate; ConfigError carries a line/column or JSON path.
Config load_config(const std::string& path);
Config config_from_text(const std::string& text, const std::string& base_dir = ".");

/// SHA-256 of the canonical (sorted, compact) config document.
std::string config_hash(const nlohmann::json& raw);

}  // namespace torcx
