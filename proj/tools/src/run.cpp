#include "progdist_cli/run.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "progdist/bilinear.hpp"
#include "progdist/discrepancy.hpp"
#include "progdist/kloosterman.hpp"
#include "progdist/poisson.hpp"
#include "progdist/ramare.hpp"

namespace progdist::cli {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string format_number(u64 x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string format_number(i64 x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
  if (!header.empty()) row(header), rows_ = 0;
}

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw Error("csv: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  ++rows_;
  return *this;
}

std::string CsvTable::str() const { return text_; }

namespace {

std::string num(double x) { return format_number(x); }
std::string num(u64 x) { return format_number(x); }
std::string num(i64 x) { return format_number(x); }

json complex_json(Value z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ScanOptions scan_options(const ExperimentConfig& c, u64 segment_length = u64{1} << 20) {
  ScanOptions o;
  o.sieve.segment_length = segment_length;
  o.sieve.threads = c.threads;
  o.threads = c.threads;
  return o;
}

RunResult run_discrepancy(const ExperimentConfig& c) {
  const auto& d = c.discrepancy;
  const MultiplicativeSpec f = builtin(d.function, c.seed);
  DiscrepancyParams params{d.X, d.Q, d.a, d.eps, d.sigma, c.strict};
  const DiscrepancyReport rep = scan(f, params, scan_options(c, d.segment_length));

  RunResult r;
  r.csv = CsvTable({"q", "a", "re(D)", "im(D)", "abs(D)", "terms"});
  double max_abs = 0;
  for (const auto& rec : rep.records) {
    const double a = std::abs(rec.D);
    max_abs = std::max(max_abs, a);
    r.csv.row({num(rec.q), num(rec.a_reduced), num(rec.D.real()), num(rec.D.imag()), num(a), num(rec.terms)});
  }
  const double frac =
      rep.records.empty() ? 0.0 : static_cast<double>(rep.exceptional_count) / static_cast<double>(rep.records.size());
  r.report = {{"moduli", rep.records.size()},
              {"exceptional_count", rep.exceptional_count},
              {"exceptional_fraction", frac},
              {"max_abs_D", max_abs},
              {"global_mean", complex_json(rep.global_mean)},
              {"eta", params.eta()},
              {"warnings", rep.warnings}};
  r.summary = "discrepancy f=" + d.function + " X=" + num(d.X) + " Q=" + num(d.Q) + " moduli=" +
              num(static_cast<u64>(rep.records.size())) + " exceptional=" + num(rep.exceptional_count) +
              " max|D|=" + num(max_abs);
  return r;
}

RunResult run_counterexample(const ExperimentConfig& c) {
  const auto& d = c.counterexample;
  const MultiplicativeSpec f = builtin(d.function, c.seed);
  SieveOptions so;
  so.threads = c.threads;
  const CounterexampleReport rep = composite_counterexample(d.X, f, so);
  RunResult r;
  r.csv = CsvTable({"q", "a", "re(mean)", "im(mean)", "re(D)", "im(D)", "abs(D)"});
  r.csv.row({"2", "1", num(rep.mean_odd.real()), num(rep.mean_odd.imag()), num(rep.D_odd.real()),
             num(rep.D_odd.imag()), num(std::abs(rep.D_odd))});
  r.csv.row({"2", "2", num(rep.mean_even.real()), num(rep.mean_even.imag()), num(rep.D_even.real()),
             num(rep.D_even.imag()), num(std::abs(rep.D_even))});
  r.report = {{"function", rep.function},
              {"X", rep.X},
              {"global_mean", complex_json(rep.global_mean)},
              {"mean_odd", complex_json(rep.mean_odd)},
              {"mean_even", complex_json(rep.mean_even)},
              {"D_odd", complex_json(rep.D_odd)},
              {"D_even", complex_json(rep.D_even)}};
  r.summary = "counterexample f=" + rep.function + " X=" + num(rep.X) + " |D(2,1)|=" + num(std::abs(rep.D_odd)) +
              " |mean|=" + num(std::abs(rep.global_mean));
  if (d.function == "parity_squarefree") {
    // same bias at q = 2, but with mean tending to 0
    const CounterexampleReport alt = composite_counterexample(d.X, builtin("parity_oddpart_squarefree"), so);
    r.report["companion"] = {{"function", alt.function},
                             {"global_mean", complex_json(alt.global_mean)},
                             {"D_odd", complex_json(alt.D_odd)},
                             {"D_even", complex_json(alt.D_even)}};
    r.summary += " companion " + alt.function + ": |D(2,1)|=" + num(std::abs(alt.D_odd)) +
                 " |mean|=" + num(std::abs(alt.global_mean));
  }
  return r;
}

RunResult run_moments(const ExperimentConfig& c) {
  RunResult r;
  r.csv = CsvTable({"M", "Y", "Z", "u", "mertens", "second_moment", "fourth_centered", "log_u", "regime"});
  json rows = json::array();
  double lo2 = INFINITY, hi2 = 0, lo4 = INFINITY, hi4 = 0;
  for (const auto& g : c.moments.grid) {
    const MomentReport m = moments(g.M, g.Y, g.Z, c.strict);
    const char* regime = m.lemma_regime ? "strict" : "relaxed";
    r.csv.row({num(m.M), num(m.Y), num(m.Z), num(m.u), num(m.mertens), num(m.second_moment),
               num(m.fourth_centered), num(m.log_u), regime});
    const double c2 = m.second_moment * m.log_u * m.log_u;
    const double c4 = m.fourth_centered / (m.log_u * m.log_u);
    lo2 = std::min(lo2, c2);
    hi2 = std::max(hi2, c2);
    lo4 = std::min(lo4, c4);
    hi4 = std::max(hi4, c4);
    rows.push_back({{"M", m.M}, {"Y", m.Y}, {"Z", m.Z}, {"second_times_log2u", c2}, {"fourth_over_log2u", c4},
                    {"regime", regime}});
  }
  r.report = {{"points", rows},
              {"second_constant_spread", c.moments.grid.empty() ? 0.0 : hi2 / lo2},
              {"fourth_constant_spread", c.moments.grid.empty() ? 0.0 : hi4 / lo4}};
  r.summary = "ramare-moments points=" + num(static_cast<u64>(c.moments.grid.size())) +
              " spread(second*log^2u)=" + num(hi2 / lo2) + " spread(fourth/log^2u)=" + num(hi4 / lo4);
  return r;
}

RunResult run_decompose(const ExperimentConfig& c) {
  const auto& d = c.decompose;
  const MultiplicativeSpec f = builtin(d.function, c.seed);
  const std::vector<u64> S = primes_in(d.Q, 2 * d.Q);
  std::map<u64, Value> xi;
  if (d.xi == "aligned") {
    xi = align_xi(f, d.X, d.Q, d.a, S, scan_options(c));
  } else {
    for (u64 q : S) xi.emplace(q, Value(1.0));
  }
  const ValueTable F = make_progression_F(d.Q, d.a, xi).table(d.X);
  DecomposeOptions opts;
  opts.policy.subdivisions = d.subdivisions;
  opts.strict = c.strict;
  opts.threads = c.threads;
  const BilinearDecomposition dec = decompose(f, F, d.Y, d.Z, opts);

  RunResult r;
  r.csv = CsvTable({"re(lhs)", "im(lhs)", "F_inf", "e_triv", "e_sieve", "e_bilinear", "fitted_C"});
  const std::string fitted = dec.fitted_C ? num(*dec.fitted_C) : "";
  r.csv.row({num(dec.lhs.real()), num(dec.lhs.imag()), num(dec.F_inf), num(dec.e_triv), num(dec.e_sieve),
             num(dec.e_bilinear), fitted});
  r.report = {{"lhs", complex_json(dec.lhs)},
              {"F_inf", dec.F_inf},
              {"e_triv", dec.e_triv},
              {"e_sieve", dec.e_sieve},
              {"e_bilinear", dec.e_bilinear},
              {"bilinear_sup",
               {{"value", dec.bilinear.value},
                {"p", dec.bilinear.p},
                {"p2", dec.bilinear.p2},
                {"first", dec.bilinear.interval.first},
                {"last", dec.bilinear.interval.last}}},
              {"fitted_C", dec.fitted_C ? json(*dec.fitted_C) : json(nullptr)},
              {"moduli", S.size()},
              {"warnings", dec.warnings}};
  r.summary = "decompose f=" + d.function + " X=" + num(d.X) + " Y=" + num(d.Y) + " Z=" + num(d.Z) +
              " |lhs|=" + num(std::abs(dec.lhs)) + " e_triv=" + num(dec.e_triv) + " e_sieve=" + num(dec.e_sieve) +
              " e_bilinear=" + num(dec.e_bilinear);
  return r;
}

RunResult run_sieve_count(const ExperimentConfig& c) {
  const auto& s = c.sieve_count;
  RunResult r;
  r.csv = CsvTable({"X", "q", "a", "Y", "Z", "count", "ratio"});
  json warnings = json::array();
  double lo = INFINITY, hi = 0;
  for (u64 q : s.q_grid) {
    const SieveCount sc = sieve_count(s.X, q, s.a, s.Y, s.Z, c.strict);
    r.csv.row({num(s.X), num(q), num(s.a), num(s.Y), num(s.Z), num(sc.count), num(sc.ratio)});
    for (const auto& w : sc.warnings) warnings.push_back("q=" + num(q) + ": " + w);
    lo = std::min(lo, sc.ratio);
    hi = std::max(hi, sc.ratio);
  }
  r.report = {{"rough_density", rough_density(s.Y, s.Z)},
              {"min_ratio", s.q_grid.empty() ? 0.0 : lo},
              {"max_ratio", hi},
              {"warnings", warnings}};
  r.summary = "sieve-count X=" + num(s.X) + " moduli=" + num(static_cast<u64>(s.q_grid.size())) +
              " ratio in [" + num(lo) + ", " + num(hi) + "]";
  return r;
}

PhaseSpec phase_spec(const ExperimentConfig& c) {
  const auto& k = c.kloosterman;
  PhaseSpec spec;
  spec.p = k.p;
  spec.p2 = k.p2;
  spec.a = k.a;
  spec.h = k.h;
  if (k.weights == "random") {
    spec.alpha = random_unimodular_weights(c.seed);
    spec.beta = random_unimodular_weights(splitmix64(c.seed));
  }
  return spec;
}

RunResult run_kloosterman(const ExperimentConfig& c) {
  const auto& k = c.kloosterman;
  PhaseSpec spec = phase_spec(c);
  RunResult r;
  r.csv = CsvTable({"Q", "n_primes", "abs_sum", "trivial_bound", "ratio"});
  if (k.Q_grid.size() >= 4) {
    CancellationOptions opts;
    opts.min_primes = k.min_primes;
    opts.threads = c.threads;
    const KloostermanScan s = cancellation_scan(k.Q_grid, spec, opts);
    bool within = true;
    for (const auto& row : s.rows) {
      r.csv.row({num(row.Q), num(row.n_primes), num(row.abs_sum), num(row.trivial_bound), num(row.ratio)});
      within = within && row.abs_sum <= row.trivial_bound;
    }
    r.report = {{"slope", s.slope},
                {"intercept", s.intercept},
                {"trivial_slope", s.trivial_slope},
                {"reference_slope", s.reference_slope},
                {"within_trivial_bound", within}};
    r.summary = "kloosterman grid=" + num(static_cast<u64>(s.rows.size())) + " slope=" + num(s.slope) +
                " (trivial " + num(s.trivial_slope) + ")";
    return r;
  }
  json sums = json::array();
  BilinearSumOptions opts;
  opts.threads = c.threads;
  for (u64 Q : k.Q_grid) {
    spec.Q = Q;
    const Value sum = bilinear_sum(spec, opts);
    const auto n = static_cast<u64>(primes_in(Q, 2 * Q).size());
    const double triv = static_cast<double>(n) * static_cast<double>(n);
    r.csv.row({num(Q), num(n), num(std::abs(sum)), num(triv), num(std::abs(sum) / triv)});
    sums.push_back({{"Q", Q}, {"sum", complex_json(sum)}});
  }
  r.report = {{"slope", nullptr}, {"sums", sums}};
  r.summary = "kloosterman grid=" + num(static_cast<u64>(k.Q_grid.size())) + " (slope needs >= 4 points)";
  return r;
}

json adversarial_json(const AdversarialResult& a) {
  return {{"count_sum", a.count_sum}, {"main_term", a.main_term}, {"sum", a.sum}, {"ratio", a.ratio}};
}

RunResult run_adversarial(const ExperimentConfig& c) {
  const auto& v = c.adversarial;
  const HalfSplit split = v.split == "alternating" ? HalfSplit::alternating : HalfSplit::first_second;
  const AdversarialResult adv = adversarial_assignment(v.Q, v.p, v.p2, v.X, split);
  const AdversarialResult honest = residue_pair_sum(fixed_residues(v.Q, v.honest_a), v.Q, v.p, v.p2, v.X);
  RunResult r;
  r.csv = CsvTable({"q", "residue"});
  for (const auto& e : adv.assignment) r.csv.row({num(e.q), num(e.residue)});
  r.report = {{"adversarial", adversarial_json(adv)}, {"honest", adversarial_json(honest)}};
  r.summary = "adversarial Q=" + num(v.Q) + " X=" + num(v.X) + " sum/Q^2=" + num(adv.ratio) +
              " honest sum/Q^2=" + num(honest.ratio);
  return r;
}

RunResult run_poisson(const ExperimentConfig& c) {
  const auto& p = c.poisson;
  const SmoothCutoff W(p.j0, p.j1, p.S);
  const PoissonCheck chk = poisson_check(W, p.L, p.d, p.b, p.H);
  if (p.xi_count < 1) throw Error("poisson-check: xi_count must be >= 1");
  if (!(p.xi_min > 0.0 && p.xi_max >= p.xi_min)) throw Error("poisson-check: need 0 < xi_min <= xi_max");
  const double norm = cutoff_derivative_l1(W, p.A);

  RunResult r;
  r.csv = CsvTable({"xi", "re", "im", "abs", "bound"});
  double sup = 0;
  for (u64 i = 0; i < p.xi_count; ++i) {
    const double t = p.xi_count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(p.xi_count - 1);
    const double xi = p.xi_min * std::pow(p.xi_max / p.xi_min, t);
    const Complex w = fourier_W(W, xi);
    r.csv.row({num(xi), num(w.real()), num(w.imag()), num(std::abs(w)), num(norm / std::pow(xi, p.A))});
    sup = std::max(sup, std::abs(w) * std::pow(xi, p.A) * std::pow(p.S, 1.0 - p.A));
  }
  r.ok = chk.ok;
  r.report = {{"lhs", chk.lhs},
              {"rhs", complex_json(chk.rhs)},
              {"rhs_literal", complex_json(chk.rhs_literal)},
              {"aliasing", complex_json(chk.aliasing)},
              {"difference", chk.difference},
              {"tail_bound", chk.tail.bound},
              {"tail_A", chk.tail.A},
              {"quadrature_budget", chk.quadrature_budget},
              {"ok", chk.ok},
              {"decay_constant", sup}};
  r.summary = std::string("poisson-check ") + (chk.ok ? "ok" : "FAILED") + " |lhs-rhs|=" + num(chk.difference) +
              " tail=" + num(chk.tail.bound) + " H=" + num(p.H);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace

RunResult run(const ExperimentConfig& c) {
  if (c.command == "discrepancy") return run_discrepancy(c);
  if (c.command == "counterexample") return run_counterexample(c);
  if (c.command == "ramare-moments") return run_moments(c);
  if (c.command == "decompose") return run_decompose(c);
  if (c.command == "sieve-count") return run_sieve_count(c);
  if (c.command == "kloosterman") return run_kloosterman(c);
  if (c.command == "adversarial") return run_adversarial(c);
  if (c.command == "poisson-check") return run_poisson(c);
  throw ConfigError("command", c.command.empty() ? "no subcommand given" : "unknown subcommand '" + c.command + "'");
}

json provenance(const ExperimentConfig& c, const RunResult& result) {
  json cfg = to_json(c);
  cfg.erase("threads");
  return {{"config", cfg}, {"summary", result.summary}, {"report", result.report}};
}

void write_artifacts(const ExperimentConfig& c, const RunResult& result) {
  if (c.out.empty()) return;
  write_file(c.out + ".csv", result.csv.str());
  write_file(c.out + ".json", provenance(c, result).dump(2) + "\n");
}

namespace {

// Flag values that override config entries when given.
template <class T>
void override_with(const std::optional<T>& flag, T& field) {
  if (flag) field = *flag;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"progdist: multiplicative functions in progressions to large prime moduli"};
  app.require_subcommand(0, 1);

  std::optional<std::string> config_path, out_path;
  std::optional<unsigned> threads;
  std::optional<u64> seed;
  bool strict = false, dump = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "artifact prefix; writes PREFIX.csv and PREFIX.json");
  app.add_option("--threads", threads, "worker threads (default: PROGDIST_THREADS, else 1)");
  app.add_option("--seed", seed, "seed for random_pm1 and random weights");
  app.add_flag("--strict", strict, "turn regime warnings into errors");
  app.add_flag("--dump-config", dump, "print the resolved config as JSON and exit");

  struct {
    std::optional<std::string> function;
    std::optional<u64> X, Q, segment_length;
    std::optional<i64> a;
    std::optional<double> eps, sigma;
  } disc;
  auto* s_disc = app.add_subcommand("discrepancy", "prime-modulus discrepancy scan");
  s_disc->add_option("-f,--function", disc.function);
  s_disc->add_option("-X", disc.X);
  s_disc->add_option("-Q", disc.Q);
  s_disc->add_option("-a", disc.a);
  s_disc->add_option("--eps", disc.eps);
  s_disc->add_option("--sigma", disc.sigma);
  s_disc->add_option("--segment-length", disc.segment_length);

  struct {
    std::optional<std::string> function;
    std::optional<u64> X;
  } cex;
  auto* s_cex = app.add_subcommand("counterexample", "even-modulus bias demo");
  s_cex->add_option("-f,--function", cex.function);
  s_cex->add_option("-X", cex.X);

  std::vector<u64> mom_point;
  auto* s_mom = app.add_subcommand("ramare-moments", "weight moment grid");
  s_mom->add_option("--point", mom_point, "single grid point M Y Z")->expected(3);

  struct {
    std::optional<std::string> function, xi;
    std::optional<u64> X, Q, Y, Z;
    std::optional<i64> a;
    std::optional<double> eps, sigma;
    std::optional<unsigned> subdivisions;
  } dec;
  auto* s_dec = app.add_subcommand("decompose", "trivial / sieve / bilinear decomposition");
  s_dec->add_option("-f,--function", dec.function);
  s_dec->add_option("-X", dec.X);
  s_dec->add_option("-Q", dec.Q);
  s_dec->add_option("-a", dec.a);
  s_dec->add_option("-Y", dec.Y);
  s_dec->add_option("-Z", dec.Z);
  s_dec->add_option("--eps", dec.eps);
  s_dec->add_option("--sigma", dec.sigma);
  s_dec->add_option("--xi", dec.xi)->check(CLI::IsMember({"aligned", "one"}));
  s_dec->add_option("--subdivisions", dec.subdivisions);

  struct {
    std::optional<u64> X, Y, Z;
    std::optional<i64> a;
    std::vector<u64> q;
  } sc;
  auto* s_sc = app.add_subcommand("sieve-count", "rough numbers in progressions");
  s_sc->add_option("-X", sc.X);
  s_sc->add_option("-a", sc.a);
  s_sc->add_option("-Y", sc.Y);
  s_sc->add_option("-Z", sc.Z);
  s_sc->add_option("-q", sc.q, "moduli");

  struct {
    std::optional<u64> p, p2, min_primes;
    std::optional<i64> a, h;
    std::optional<std::string> weights;
    std::vector<u64> Q;
  } kl;
  auto* s_kl = app.add_subcommand("kloosterman", "Kloosterman-fraction bilinear sums");
  s_kl->add_option("-p", kl.p);
  s_kl->add_option("--p2", kl.p2);
  s_kl->add_option("-a", kl.a);
  s_kl->add_option("--frequency", kl.h, "h");
  s_kl->add_option("-Q", kl.Q, "Q grid");
  s_kl->add_option("--weights", kl.weights)->check(CLI::IsMember({"one", "random"}));
  s_kl->add_option("--min-primes", kl.min_primes);

  struct {
    std::optional<u64> Q, p, p2, X;
    std::optional<std::string> split;
    std::optional<i64> honest_a;
  } adv;
  auto* s_adv = app.add_subcommand("adversarial", "adversarial residue assignment");
  s_adv->add_option("-Q", adv.Q);
  s_adv->add_option("-p", adv.p);
  s_adv->add_option("--p2", adv.p2);
  s_adv->add_option("-X", adv.X);
  s_adv->add_option("--split", adv.split)->check(CLI::IsMember({"first_second", "alternating"}));
  s_adv->add_option("--honest-a", adv.honest_a);

  struct {
    std::optional<double> j0, j1, S, L, xi_min, xi_max;
    std::optional<u64> d, b, H, xi_count;
    std::optional<int> A;
  } poi;
  auto* s_poi = app.add_subcommand("poisson-check", "smoothed cutoff and Poisson summation");
  s_poi->add_option("--j0", poi.j0);
  s_poi->add_option("--j1", poi.j1);
  s_poi->add_option("-S", poi.S);
  s_poi->add_option("-L", poi.L);
  s_poi->add_option("-d", poi.d);
  s_poi->add_option("-b", poi.b);
  s_poi->add_option("-H", poi.H, "truncation (0: minimal adequate)");
  s_poi->add_option("--xi-min", poi.xi_min);
  s_poi->add_option("--xi-max", poi.xi_max);
  s_poi->add_option("--xi-count", poi.xi_count);
  s_poi->add_option("-A", poi.A);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  ExperimentConfig c;
  try {
    if (config_path) c = load_config(*config_path);
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    override_with(out_path, c.out);
    override_with(threads, c.threads);
    override_with(seed, c.seed);
    if (strict) c.strict = true;

    auto& d = c.discrepancy;
    override_with(disc.function, d.function);
    override_with(disc.X, d.X);
    override_with(disc.Q, d.Q);
    override_with(disc.a, d.a);
    override_with(disc.eps, d.eps);
    override_with(disc.sigma, d.sigma);
    override_with(disc.segment_length, d.segment_length);

    override_with(cex.function, c.counterexample.function);
    override_with(cex.X, c.counterexample.X);

    if (!mom_point.empty()) c.moments.grid = {{mom_point[0], mom_point[1], mom_point[2]}};

    auto& b = c.decompose;
    override_with(dec.function, b.function);
    override_with(dec.xi, b.xi);
    override_with(dec.X, b.X);
    override_with(dec.Q, b.Q);
    override_with(dec.Y, b.Y);
    override_with(dec.Z, b.Z);
    override_with(dec.a, b.a);
    override_with(dec.eps, b.eps);
    override_with(dec.sigma, b.sigma);
    override_with(dec.subdivisions, b.subdivisions);

    auto& s = c.sieve_count;
    override_with(sc.X, s.X);
    override_with(sc.Y, s.Y);
    override_with(sc.Z, s.Z);
    override_with(sc.a, s.a);
    if (!sc.q.empty()) s.q_grid = sc.q;

    auto& k = c.kloosterman;
    override_with(kl.p, k.p);
    override_with(kl.p2, k.p2);
    override_with(kl.min_primes, k.min_primes);
    override_with(kl.a, k.a);
    override_with(kl.h, k.h);
    override_with(kl.weights, k.weights);
    if (!kl.Q.empty()) k.Q_grid = kl.Q;

    auto& v = c.adversarial;
    override_with(adv.Q, v.Q);
    override_with(adv.p, v.p);
    override_with(adv.p2, v.p2);
    override_with(adv.X, v.X);
    override_with(adv.split, v.split);
    override_with(adv.honest_a, v.honest_a);

    auto& p = c.poisson;
    override_with(poi.j0, p.j0);
    override_with(poi.j1, p.j1);
    override_with(poi.S, p.S);
    override_with(poi.L, p.L);
    override_with(poi.xi_min, p.xi_min);
    override_with(poi.xi_max, p.xi_max);
    override_with(poi.d, p.d);
    override_with(poi.b, p.b);
    override_with(poi.H, p.H);
    override_with(poi.xi_count, p.xi_count);
    override_with(poi.A, p.A);

    // round trip through JSON so flag values meet the same validation as file values
    c = resolve(config_from_json(to_json(c)));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (dump) {
    out << to_json(c).dump(2) << "\n";
    return 0;
  }
  if (c.command.empty()) {
    err << "config error: command: no subcommand given\n";
    return 2;
  }

  try {
    const RunResult r = run(c);
    write_artifacts(c, r);
    out << r.summary << "\n";
    return r.ok ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace progdist::cli
