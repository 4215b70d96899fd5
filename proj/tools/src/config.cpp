#include "progdist_cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "progdist/poisson.hpp"

namespace progdist::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Walks one JSON object, remembering which keys were consumed so that the
// leftovers can be reported.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    out = convert<T>(*it, join(path_, key));
  }

  template <class T>
  void get_list(const std::string& key, std::vector<T>& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    const std::string p = join(path_, key);
    if (!it->is_array()) throw ConfigError(p, "expected an array");
    out.clear();
    for (std::size_t i = 0; i < it->size(); ++i) out.push_back(convert<T>((*it)[i], p + "[" + std::to_string(i) + "]"));
  }

  template <class Fn>
  void child(const std::string& key, Fn&& fn) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    Reader r(*it, join(path_, key));
    fn(r);
    r.finish();
  }

  [[nodiscard]] const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }
  [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }
  [[nodiscard]] const std::string& path() const { return path_; }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(join(path_, k), "unknown field");
  }

  template <class T>
  static T convert(const json& v, const std::string& p) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(p, "expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(p, "expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(p, "expected a number");
      return v.get<double>();
    } else if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned()) {
        const auto x = v.get<std::uint64_t>();
        if (x > std::numeric_limits<T>::max()) throw ConfigError(p, "value out of range");
        return static_cast<T>(x);
      }
      if (v.is_number_integer()) throw ConfigError(p, "expected a non-negative integer");
      throw ConfigError(p, "expected an unsigned integer");
    } else {
      static_assert(std::is_signed_v<T>);
      if (!v.is_number_integer()) throw ConfigError(p, "expected an integer");
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<T>::max()))
        throw ConfigError(p, "value out of range");
      const auto x = v.get<std::int64_t>();
      if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max())
        throw ConfigError(p, "value out of range");
      return static_cast<T>(x);
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

u64 floor_power(u64 X, double exponent) {
  auto q = static_cast<u64>(std::floor(std::pow(static_cast<double>(X), exponent)));
  return q;
}

u64 rounded_power(u64 X, double exponent) {
  return static_cast<u64>(std::llround(std::pow(static_cast<double>(X), exponent)));
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"discrepancy", "counterexample", "ramare-moments", "decompose",
                                              "sieve-count", "kloosterman",    "adversarial",    "poisson-check"};
  return names;
}

std::vector<MomentPoint> default_moment_grid() {
  auto p8 = [](u64 z) { return z * z * z * z * z * z * z * z; };
  return {
      {p8(4), 2, 4},   {p8(5), 2, 5},       {p8(8), 2, 8},       {p8(16), 2, 16}, {p8(31), 2, 31},
      {p8(9), 3, 9},   {p8(27), 3, 27},     {64ULL * 64 * 64 * 64, 2, 64},
      {1000000000, 2, 128}, {1000000000, 2, 256},
  };
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["out"] = c.out;
  j["threads"] = c.threads;
  j["strict"] = c.strict;
  j["seed"] = c.seed;

  const auto& d = c.discrepancy;
  j["discrepancy"] = {{"function", d.function}, {"X", d.X},         {"Q", d.Q},
                      {"a", d.a},               {"eps", d.eps},     {"sigma", d.sigma},
                      {"segment_length", d.segment_length}};
  j["counterexample"] = {{"function", c.counterexample.function}, {"X", c.counterexample.X}};
  json grid = json::array();
  for (const auto& g : c.moments.grid) grid.push_back({{"M", g.M}, {"Y", g.Y}, {"Z", g.Z}});
  j["ramare_moments"] = {{"grid", grid}};
  const auto& b = c.decompose;
  j["decompose"] = {{"function", b.function}, {"X", b.X},     {"Q", b.Q},   {"a", b.a},
                    {"eps", b.eps},           {"sigma", b.sigma}, {"Y", b.Y}, {"Z", b.Z},
                    {"xi", b.xi},             {"subdivisions", b.subdivisions}};
  const auto& s = c.sieve_count;
  j["sieve_count"] = {{"X", s.X}, {"a", s.a}, {"Y", s.Y}, {"Z", s.Z}, {"q_grid", s.q_grid}};
  const auto& k = c.kloosterman;
  j["kloosterman"] = {{"p", k.p},           {"p2", k.p2},           {"a", k.a},
                      {"h", k.h},           {"Q_grid", k.Q_grid},   {"weights", k.weights},
                      {"min_primes", k.min_primes}};
  const auto& v = c.adversarial;
  j["adversarial"] = {{"Q", v.Q},   {"p", v.p},         {"p2", v.p2},
                      {"X", v.X},   {"split", v.split}, {"honest_a", v.honest_a}};
  const auto& p = c.poisson;
  j["poisson_check"] = {{"j0", p.j0},         {"j1", p.j1},         {"S", p.S},
                        {"L", p.L},           {"d", p.d},           {"b", p.b},
                        {"H", p.H},           {"xi_min", p.xi_min}, {"xi_max", p.xi_max},
                        {"xi_count", p.xi_count}, {"A", p.A}};
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  Reader r(j, "");
  r.get("command", c.command);
  r.get("out", c.out);
  r.get("threads", c.threads);
  r.get("strict", c.strict);
  r.get("seed", c.seed);
  r.child("discrepancy", [&](Reader& s) {
    auto& d = c.discrepancy;
    s.get("function", d.function);
    s.get("X", d.X);
    s.get("Q", d.Q);
    s.get("a", d.a);
    s.get("eps", d.eps);
    s.get("sigma", d.sigma);
    s.get("segment_length", d.segment_length);
  });
  r.child("counterexample", [&](Reader& s) {
    s.get("function", c.counterexample.function);
    s.get("X", c.counterexample.X);
  });
  r.child("ramare_moments", [&](Reader& s) {
    if (!s.has("grid")) return;
    const json& g = s.raw("grid");
    const std::string p = join(s.path(), "grid");
    if (!g.is_array()) throw ConfigError(p, "expected an array");
    c.moments.grid.clear();
    for (std::size_t i = 0; i < g.size(); ++i) {
      Reader e(g[i], p + "[" + std::to_string(i) + "]");
      MomentPoint m;
      e.get("M", m.M);
      e.get("Y", m.Y);
      e.get("Z", m.Z);
      e.finish();
      c.moments.grid.push_back(m);
    }
  });
  r.child("decompose", [&](Reader& s) {
    auto& b = c.decompose;
    s.get("function", b.function);
    s.get("X", b.X);
    s.get("Q", b.Q);
    s.get("a", b.a);
    s.get("eps", b.eps);
    s.get("sigma", b.sigma);
    s.get("Y", b.Y);
    s.get("Z", b.Z);
    s.get("xi", b.xi);
    s.get("subdivisions", b.subdivisions);
  });
  r.child("sieve_count", [&](Reader& s) {
    auto& v = c.sieve_count;
    s.get("X", v.X);
    s.get("a", v.a);
    s.get("Y", v.Y);
    s.get("Z", v.Z);
    s.get_list("q_grid", v.q_grid);
  });
  r.child("kloosterman", [&](Reader& s) {
    auto& k = c.kloosterman;
    s.get("p", k.p);
    s.get("p2", k.p2);
    s.get("a", k.a);
    s.get("h", k.h);
    s.get_list("Q_grid", k.Q_grid);
    s.get("weights", k.weights);
    s.get("min_primes", k.min_primes);
  });
  r.child("adversarial", [&](Reader& s) {
    auto& v = c.adversarial;
    s.get("Q", v.Q);
    s.get("p", v.p);
    s.get("p2", v.p2);
    s.get("X", v.X);
    s.get("split", v.split);
    s.get("honest_a", v.honest_a);
  });
  r.child("poisson_check", [&](Reader& s) {
    auto& p = c.poisson;
    s.get("j0", p.j0);
    s.get("j1", p.j1);
    s.get("S", p.S);
    s.get("L", p.L);
    s.get("d", p.d);
    s.get("b", p.b);
    s.get("H", p.H);
    s.get("xi_min", p.xi_min);
    s.get("xi_max", p.xi_max);
    s.get("xi_count", p.xi_count);
    s.get("A", p.A);
  });
  r.finish();

  if (!c.command.empty()) {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), c.command) == names.end())
      throw ConfigError("command", "unknown subcommand '" + c.command + "'");
  }
  for (const std::string* s : {&c.decompose.xi}) {
    if (*s != "aligned" && *s != "one") throw ConfigError("decompose.xi", "expected \"aligned\" or \"one\"");
  }
  if (c.kloosterman.weights != "one" && c.kloosterman.weights != "random")
    throw ConfigError("kloosterman.weights", "expected \"one\" or \"random\"");
  if (c.adversarial.split != "first_second" && c.adversarial.split != "alternating")
    throw ConfigError("adversarial.split", "expected \"first_second\" or \"alternating\"");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig resolve(ExperimentConfig c) {
  if (c.threads == 0) {
    c.threads = 1;
    if (const char* env = std::getenv("PROGDIST_THREADS"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long v = std::strtoul(env, &end, 10);
      if (*end != '\0' || v == 0 || v > 4096) throw ConfigError("PROGDIST_THREADS", "expected a positive integer");
      c.threads = static_cast<unsigned>(v);
    }
  }
  if (c.discrepancy.Q == 0) c.discrepancy.Q = floor_power(c.discrepancy.X, 0.45);

  auto& b = c.decompose;
  if (b.Q == 0) b.Q = floor_power(b.X, 0.45);
  if (b.Y == 0) b.Y = std::max<u64>(2, rounded_power(b.X, b.eps * b.sigma / 4.0));
  if (b.Z == 0) b.Z = std::max<u64>(b.Y + 1, rounded_power(b.X, b.sigma / 4.0));

  if (c.moments.grid.empty()) c.moments.grid = default_moment_grid();

  auto& p = c.poisson;
  if (p.H == 0) p.H = minimal_adequate_H(SmoothCutoff(p.j0, p.j1, p.S), p.L, p.d);
  return c;
}

}  // namespace progdist::cli
