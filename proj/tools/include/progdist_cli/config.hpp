#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "progdist/util.hpp"

namespace progdist::cli {

/// Raised for malformed configuration; the message starts with the field path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& what) : Error(path + ": " + what), path_(path) {}
  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct DiscrepancyConfig {
  std::string function = "liouville";
  u64 X = 100000;
  u64 Q = 0;  // 0: floor(X^0.45)
  i64 a = 1;
  double eps = 0.1;
  double sigma = 0.01;
  u64 segment_length = u64{1} << 20;
};

struct CounterexampleConfig {
  std::string function = "parity_squarefree";
  u64 X = 1000000;
};

struct MomentPoint {
  u64 M = 0;
  u64 Y = 0;
  u64 Z = 0;
};

struct MomentsConfig {
  std::vector<MomentPoint> grid;
};

struct DecomposeConfig {
  std::string function = "liouville";
  u64 X = 20000;
  u64 Q = 0;  // 0: floor(X^0.45)
  i64 a = 1;
  double eps = 0.5;
  double sigma = 0.4;
  u64 Y = 3;  // 0: max(2, round(X^{eps sigma / 4}))
  u64 Z = 30;  // 0: max(Y + 1, round(X^{sigma / 4}))
  std::string xi = "aligned";  // or "one"
  unsigned subdivisions = 8;
};

struct SieveCountConfig {
  u64 X = 1000000;
  i64 a = 1;
  u64 Y = 3;
  u64 Z = 30;
  std::vector<u64> q_grid{30011, 40009, 50021, 60013};
};

struct KloostermanConfig {
  u64 p = 2;
  u64 p2 = 3;
  i64 a = 1;
  i64 h = 1;
  std::vector<u64> Q_grid{200, 400, 800, 1600, 3200};
  std::string weights = "one";  // or "random"
  u64 min_primes = 30;
};

struct AdversarialConfig {
  u64 Q = 200;
  u64 p = 2;
  u64 p2 = 3;
  u64 X = 10000;
  std::string split = "alternating";  // or "first_second"
  i64 honest_a = 1;
};

struct PoissonConfig {
  double j0 = 0.1;
  double j1 = 0.9;
  double S = 20;
  double L = 100;
  u64 d = 5;
  u64 b = 2;
  u64 H = 200;  // 0: minimal adequate H
  double xi_min = 1;
  double xi_max = 1000;
  u64 xi_count = 64;
  int A = 2;
};

struct ExperimentConfig {
  std::string command;
  std::string out;       // artifact prefix; empty means no files
  unsigned threads = 0;  // 0: PROGDIST_THREADS, else 1
  bool strict = false;
  u64 seed = 0;

  DiscrepancyConfig discrepancy;
  CounterexampleConfig counterexample;
  MomentsConfig moments;
  DecomposeConfig decompose;
  SieveCountConfig sieve_count;
  KloostermanConfig kloosterman;
  AdversarialConfig adversarial;
  PoissonConfig poisson;
};

/// Subcommand names in the order they are documented.
const std::vector<std::string>& command_names();

/// The moment grid used when none is configured.
std::vector<MomentPoint> default_moment_grid();

nlohmann::json to_json(const ExperimentConfig& config);

/// Strict parse: unknown keys and type mismatches raise ConfigError naming
/// the offending path, e.g. "discrepancy.X". Missing keys keep defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Fills derived defaults (Q, Y, Z, H, thread count) so the result is
/// fully explicit.
ExperimentConfig resolve(ExperimentConfig config);

}  // namespace progdist::cli
