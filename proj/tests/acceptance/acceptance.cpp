// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit status
// is nonzero if any selected criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "peridyn/parallel.hpp"
#include "peridyn/run.hpp"
#include "peridyn/scenarios.hpp"
#include "peridyn/writers.hpp"

namespace {

using namespace peridyn;
namespace fs = std::filesystem;

// Thresholds.
constexpr double kMomentTolerance = 1e-6;
constexpr double kMomentSeconds = 1.0;
constexpr double kEnergyTolerance = 0.01;
constexpr double kEnergySeconds = 1.0;
constexpr double kRateLow = 1.7;
constexpr double kRateHigh = 2.3;
constexpr double kFlatRate = 0.3;
constexpr double kChi25Rate = 1.2;
constexpr double kFinestErrorBound = 1e-7;
constexpr double kPlateauFactor = 50.0;
constexpr double kQuadraticTolerance = 0.02;
constexpr double kAngleFine = 65.0;
constexpr double kAngleFineBand = 8.0;
constexpr double kAngleCoarseLow = 45.0;
constexpr double kAngleCoarseHigh = 70.0;
constexpr double kInvariantSeconds = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join_rates(const std::vector<double>& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) s += fmt(i ? ", %.3f" : "%.3f", r[i]);
  return s;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConvergenceReport manufactured(double sigma_ratio, double chi2) {
  ScenarioConfig c = ScenarioConfig::defaults("converge");
  c.sigma_ratio = sigma_ratio;
  c.chi2 = chi2;
  return run_convergence_study(c);
}

ConvergenceReport manufactured_classical(CorrectionMethod method, double delta_ratio) {
  ScenarioConfig c = ScenarioConfig::defaults("converge");
  c.model = ModelKind::classical_linear;
  c.sigma_ratio.reset();
  c.delta_ratio = delta_ratio;
  c.correction = method;
  return run_convergence_study(c);
}

bool rates_within(const std::vector<double>& r, double lo, double hi) {
  return std::all_of(r.begin(), r.end(), [&](double x) { return x >= lo && x <= hi; });
}

bool rates_below(const std::vector<double>& r, double bound) {
  return std::all_of(r.begin(), r.end(), [&](double x) { return std::abs(x) < bound; });
}

Outcome criterion_moments() {
  const auto t0 = std::chrono::steady_clock::now();
  const MomentCheck m = gaussian_moment_check(1.0, 1.0 / 8.0, 10.0);
  const double t = seconds_since(t0);
  return {m.max_relative_residual < kMomentTolerance && t < kMomentSeconds,
          fmt("max relative residual %.3e (< %.0e), %.3f s", m.max_relative_residual,
              kMomentTolerance, t)};
}

Outcome criterion_energy() {
  const auto t0 = std::chrono::steady_clock::now();
  const EnergyCheck e = energy_equivalence_check(1.92e11, 1e-3, 4.0, 36.0);
  const double t = seconds_since(t0);
  const double rel = std::abs(e.computed / e.expected_continuum - 1.0);
  return {rel < kEnergyTolerance && t < kEnergySeconds,
          fmt("W / (3Es^2/2) - 1 = %.3e (< %.0e), %.3f s", rel, kEnergyTolerance, t)};
}

Outcome criterion_asymptotic() {
  const auto full = manufactured(1.0, 36.0);
  const auto half = manufactured(0.5, 36.0);
  const double finest = full.levels.back().l2_error;
  const bool ok = rates_within(full.rates, kRateLow, kRateHigh) &&
                  rates_below(half.rates, kFlatRate) && finest < kFinestErrorBound;
  return {ok, fmt("sigma=dx rates [%s], sigma=dx/2 rates [%s], L2(201) %.3e (< %.0e)",
                  join_rates(full.rates).c_str(), join_rates(half.rates).c_str(), finest,
                  kFinestErrorBound)};
}

Outcome criterion_truncation() {
  const auto c16 = manufactured(1.0, 16.0);
  const auto c25 = manufactured(1.0, 25.0);
  const auto c36 = manufactured(1.0, 36.0);
  const auto c49 = manufactured(1.0, 49.0);
  const bool ok = rates_within(c36.rates, kRateLow, kRateHigh) &&
                  rates_within(c49.rates, kRateLow, kRateHigh) &&
                  std::all_of(c16.rates.begin(), c16.rates.end(),
                              [](double r) { return r < kFlatRate; }) &&
                  std::all_of(c25.rates.begin(), c25.rates.end(),
                              [](double r) { return r < kChi25Rate; });
  return {ok, fmt("rates chi2=16 [%s], 25 [%s], 36 [%s], 49 [%s]",
                  join_rates(c16.rates).c_str(), join_rates(c25.rates).c_str(),
                  join_rates(c36.rates).c_str(), join_rates(c49.rates).c_str())};
}

Outcome criterion_volume_correction() {
  const double gk = manufactured(1.0, 36.0).levels.back().l2_error;
  bool ok = true;
  std::string detail = fmt("GK %.3e", gk);
  for (auto m : {CorrectionMethod::fa, CorrectionMethod::lammps, CorrectionMethod::qwj}) {
    const double e = manufactured_classical(m, 6.0).levels.back().l2_error;
    ok = ok && e >= kPlateauFactor * gk;
    detail += fmt(", %s %.3e (x%.0f)", std::string(to_string(m)).c_str(), e, e / gk);
  }
  return {ok, detail + fmt(" (factor >= %.0f)", kPlateauFactor)};
}

Outcome criterion_operator() {
  const QuadraticCheck q = quadratic_consistency_check(1.92e11, 201, 1.0, 36.0);
  return {q.max_relative_error < kQuadraticTolerance,
          fmt("max relative coefficient error %.3e (< %.2f)", q.max_relative_error,
              kQuadraticTolerance)};
}

Outcome criterion_crack_plate() {
  const ScenarioConfig gk_cfg = ScenarioConfig::defaults("crack-plate");
  ScenarioConfig base_cfg = gk_cfg;
  base_cfg.model = ModelKind::classical_linear;
  base_cfg.sigma_ratio.reset();
  base_cfg.delta_ratio = 3.5;
  base_cfg.correction = CorrectionMethod::lammps;
  const auto gk = run_crack_plate(gk_cfg);
  const auto base = run_crack_plate(base_cfg);
  bool monotone = true;
  std::string errors;
  for (std::size_t k = 0; k < gk.report.levels.size(); ++k) {
    errors += fmt(k ? ", %.3e" : "%.3e", gk.report.levels[k].l2_error);
    if (k > 0) monotone = monotone && gk.report.levels[k].l2_error < gk.report.levels[k - 1].l2_error;
  }
  const bool closer = gk.profile_max_deviation < base.profile_max_deviation;
  return {monotone && closer,
          fmt("GK L2 [%s] %s; profile max deviation GK %.4f vs baseline %.4f", errors.c_str(),
              monotone ? "decreasing" : "not decreasing", gk.profile_max_deviation,
              base.profile_max_deviation)};
}

// Damaged nodes at least `reach` ahead of the tip, on each side.
bool crack_advanced(const KalthoffSetup& s, const DamageField& d, const Vec3& tip, double reach,
                    double threshold) {
  for (std::size_t i = 0; i < s.lattice.node_count(); ++i) {
    const Vec3 r = s.lattice.positions[i] - tip;
    if (d.phi[i] > threshold && dot(r, s.notch_direction) > reach && norm(r) < 4.0 * reach) {
      return true;
    }
  }
  return false;
}

struct KalthoffCheck {
  KalthoffResult result;
  bool both_tips = false;
};

KalthoffCheck kalthoff_at(std::size_t nx) {
  ScenarioConfig c = ScenarioConfig::defaults("kalthoff");
  c.levels = {nx};
  KalthoffCheck out;
  out.result = run_kalthoff(c, [&](std::size_t step, const KalthoffSetup& s, const DamageField& d) {
    if (step != c.steps) return;
    const double reach = 0.1 * s.geometry.notch_length;
    out.both_tips = crack_advanced(s, d, s.notch_tips[0], reach, c.damage_threshold) &&
                    crack_advanced(s, d, s.notch_tips[1], reach, c.damage_threshold);
  });
  return out;
}

Outcome criterion_kalthoff() {
  const auto fine = kalthoff_at(201);
  const auto coarse = kalthoff_at(101);
  const double af = fine.result.mean_angle;
  const double ac = coarse.result.mean_angle;
  const bool ok = fine.both_tips && coarse.both_tips && std::abs(af - kAngleFine) <= kAngleFineBand &&
                  ac >= kAngleCoarseLow && ac <= kAngleCoarseHigh;
  return {ok, fmt("201x101 angle %.1f (tips %.1f, %.1f; band %.0f +- %.0f), 101x51 angle %.1f "
                  "(band [%.0f, %.0f]), cracks at both tips: %s / %s",
                  af, fine.result.tip_angles[0], fine.result.tip_angles[1], kAngleFine,
                  kAngleFineBand, ac, kAngleCoarseLow, kAngleCoarseHigh,
                  fine.both_tips ? "yes" : "no", coarse.both_tips ? "yes" : "no")};
}

Outcome criterion_determinism(const fs::path& scratch) {
  auto twice = [&](const std::string& sub, ScenarioConfig c, const std::string& file) {
    c.output_dir = scratch / (sub + "_a");
    run(sub, c);
    c.output_dir = scratch / (sub + "_b");
    run(sub, c);
    const std::string a = read_file(scratch / (sub + "_a") / file);
    return !a.empty() && a == read_file(scratch / (sub + "_b") / file);
  };
  const bool conv = twice("converge", ScenarioConfig::defaults("converge"), "convergence.csv");
  const bool kw = twice("kalthoff", ScenarioConfig::defaults("kalthoff"), "break_history.csv");
  return {conv && kw, fmt("convergence.csv identical: %s, break_history.csv identical: %s",
                          conv ? "yes" : "no", kw ? "yes" : "no")};
}

// ---- invariant suites -------------------------------------------------------

DomainSpec unit_square(std::size_t n) {
  DomainSpec d;
  d.upper = {1.0, 1.0, 0.0};
  d.nx = d.ny = n;
  return d;
}

ForceModel gk_model(double sigma, bool linear) {
  const ElasticMaterial m = ElasticMaterial::bond_based(2, 1.0, 1.0, 0.0, 1.0);
  return ForceModel::gaussian(m, GaussianInfluence::make(m, sigma, 2, 36.0), linear);
}

std::vector<Vec3> random_field(std::size_t n, double scale, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Vec3> u(n);
  for (auto& x : u) x = {scale * d(rng), scale * d(rng), 0.0};
  return u;
}

bool newton_third_law() {
  const ForceModel m = gk_model(0.05, false);
  const Lattice lat = prepare_lattice(unit_square(40), m);
  const ForceAssembler a(lat, m);
  const auto u = random_field(lat.node_count(), 1e-3, 1);
  std::vector<Vec3> f(lat.node_count());
  a.assemble(u, {}, BondHealth(lat.bond_count()), f);
  Vec3 total{};
  double scale = 0.0;
  for (const auto& x : f) {
    total += x;
    scale = std::max(scale, norm(x));
  }
  return norm(total) <= 1e-12 * scale * static_cast<double>(f.size());
}

bool patch_tests() {
  const ForceModel m = gk_model(1.0 / 30, true);
  const Lattice lat = prepare_lattice(unit_square(30), m);
  const ForceAssembler a(lat, m);
  auto field = [](const Vec3& p) { return Vec3{0.01 * p.x - 0.02 * p.y, 0.03 * p.x + 0.005 * p.y, 0.0}; };
  const auto collar = make_collar(lat, m.gk.truncation_radius, field);
  const BondHealth h(lat.bond_count());
  const auto sol = solve_static_linear(a, h, collar, {}, 1e-12, 10000);
  for (std::size_t i = 0; i < lat.node_count(); ++i) {
    if (norm(sol.displacement[i] - field(lat.positions[i])) > 1e-11) return false;
  }
  return true;
}

bool verlet_reversibility() {
  const ForceModel m = gk_model(0.1, true);
  const Lattice lat = prepare_lattice(unit_square(12), m);
  const ForceAssembler a(lat, m);
  KinematicState s(lat.node_count());
  s.displacement = random_field(s.size(), 1e-4, 2);
  s.velocity = random_field(s.size(), 1e-3, 3);
  const auto u0 = s.displacement;
  BondHealth h(lat.bond_count());
  const double dt = 0.2 * stable_dt_estimate(a, m.material);
  VerletIntegrator f(a, dt);
  f.initialize(s, h);
  for (int k = 0; k < 200; ++k) f.step(s, h);
  for (auto& v : s.velocity) v = v * -1.0;
  VerletIntegrator b(a, dt);
  b.initialize(s, h);
  for (int k = 0; k < 200; ++k) b.step(s, h);
  double du = 0.0, su = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    du = std::max(du, norm(s.displacement[i] - u0[i]));
    su = std::max(su, norm(u0[i]));
  }
  return du <= 1e-12 * su;
}

bool damage_monotonicity() {
  const ForceModel m = gk_model(0.05, false);
  const Lattice lat = prepare_lattice(unit_square(30), m);
  BondHealth h(lat.bond_count());
  std::vector<double> prev(lat.node_count(), 0.0);
  for (unsigned k = 0; k < 8; ++k) {
    const auto u = random_field(lat.node_count(), 1e-3 * (1 + k % 3), 10 + k);
    std::vector<std::uint8_t> before(h.flags().begin(), h.flags().end());
    update_bond_health(u, lat, h, 0.04);
    for (std::size_t b = 0; b < before.size(); ++b) {
      if (!before[b] && h.intact(b)) return false;
      if (h.intact(b) != h.intact(lat.reverse[b])) return false;
    }
    const auto phi = damage_field(lat, h).phi;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      if (phi[i] < prev[i]) return false;
    }
    prev = phi;
  }
  return true;
}

bool lambda_monotonicity() {
  for (auto method : {CorrectionMethod::none, CorrectionMethod::fa, CorrectionMethod::lammps,
                      CorrectionMethod::qwj}) {
    double prev = 1.0;
    for (int k = 0; k <= 8000; ++k) {
      const double l = volume_correction_factor(k * 1e-3, 6.0, 1.0, method);
      if (l < 0.0 || l > 1.0 || l > prev) return false;
      prev = l;
    }
  }
  return true;
}

Outcome criterion_invariants() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Named {
    const char* name;
    std::function<bool()> fn;
  };
  const std::vector<Named> suites{{"newton", newton_third_law},
                                  {"patch", patch_tests},
                                  {"reversibility", verlet_reversibility},
                                  {"damage-monotone", damage_monotonicity},
                                  {"lambda-monotone", lambda_monotonicity}};
  bool ok = true;
  std::string detail;
  for (const auto& s : suites) {
    const bool r = s.fn();
    ok = ok && r;
    detail += fmt("%s%s %s", detail.empty() ? "" : ", ", s.name, r ? "ok" : "FAILED");
  }
  const double t = seconds_since(t0);
  return {ok && t < kInvariantSeconds, detail + fmt(", %.2f s (< %.0f s)", t, kInvariantSeconds)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peridyn acceptance suite"};
  std::vector<int> selected;
  std::string scratch_dir = (fs::temp_directory_path() / "peridyn_acceptance").string();
  app.add_option("--criterion", selected, "criterion number(s), default all")
      ->check(CLI::Range(1, 10));
  app.add_option("--scratch", scratch_dir, "directory for run outputs");
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  configure_threads();
  const fs::path scratch = scratch_dir;

  struct Criterion {
    const char* title;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> all{
      {"moment identities", criterion_moments},
      {"energy equivalence", criterion_energy},
      {"asymptotic compatibility", criterion_asymptotic},
      {"truncation sensitivity", criterion_truncation},
      {"volume-correction plateau", criterion_volume_correction},
      {"operator consistency", criterion_operator},
      {"crack plate", criterion_crack_plate},
      {"Kalthoff-Winkler", criterion_kalthoff},
      {"determinism", [&] {
         fs::remove_all(scratch);
         fs::create_directories(scratch);
         return criterion_determinism(scratch);
       }},
      {"invariant suites", criterion_invariants},
  };

  int failures = 0;
  for (int id : selected) {
    const auto& c = all[static_cast<std::size_t>(id - 1)];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %2d %s  %s: %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
