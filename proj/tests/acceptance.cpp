// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero
// if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <unistd.h>

#include "pdm/ambiguity.hpp"
#include "pdm/eigensolve.hpp"
#include "pdm/error.hpp"
#include "pdm/models.hpp"
#include "pdm/separation.hpp"
#include "pdm/specfun.hpp"

using namespace pdm;
using namespace pdm::models;
namespace es = pdm::eigensolve;
using std::numbers::pi;

namespace {

struct Verdict {
  bool pass;
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

AmbiguitySet random_ordering(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.0);
  const double al = u(rng);
  const double be = u(rng);
  return make_ambiguity(al, be, -1.0 - al - be);
}

// ---------------------------------------------------------------------------

Verdict coulomb_quantisation() {
  const auto t0 = std::chrono::steady_clock::now();
  SolverOptions opts;
  opts.n_points = 4000;
  opts.tol = 1e-4;
  double worst = 0.0;
  bool all = true;
  int cases = 0;
  for (double b : {3.0, 4.0, 6.0}) {
    const int n_max = std::min(2, static_cast<int>(std::ceil(b - 1.0)) - 1);
    for (const auto& r : verify_coulomb(b, n_max, opts)) {
      worst = std::max(worst, *r.rel_delta);
      all = all && *r.within_tolerance;
      ++cases;
    }
  }
  const double t = seconds_since(t0);
  return {all && t < 60.0,
          fmt("%d cases, max rel deviation from -1/(n_rho+l+1)^2 = %.3g (tol 1e-4), %.1f s",
              cases, worst, t)};
}

// Same operator against its hydrogen-like levels, on a wider domain.
std::string coulomb_levels_info() {
  double worst = 0.0;
  for (double b : {3.0, 4.0, 6.0}) {
    for (int n = 0; n <= 2 && b > n + 1.0; ++n) {
      const double ell = b - n - 1.0;
      SolverOptions opts;
      opts.n_points = 8000;
      opts.rho_max = 250.0;
      const auto r = coulomb_state(ell, n, opts);
      const double want = -1.0 / ((n + ell + 0.5) * (n + ell + 0.5));
      worst = std::max(worst, std::fabs(*r.energy_numeric - want) / std::fabs(want));
    }
  }
  return fmt("same cases against -1/(n_rho+l+1/2)^2 (rho_max 250): max rel deviation %.3g",
             worst);
}

Verdict oscillator_quantisation() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool all = true;
  for (double ell : {0.5, 1.0, 2.0, 3.0}) {
    for (int n = 0; n <= 2; ++n) {
      const auto r = oscillator_state(1.0, ell, n);
      worst = std::max(worst, *r.rel_delta);
      all = all && *r.within_tolerance;
    }
  }
  const double t = seconds_since(t0);
  return {all && t < 60.0,
          fmt("12 cases, max rel deviation from a(2n_rho+l+1) = %.3g (tol 1e-4), %.1f s", worst, t)};
}

Verdict pipeline_identities() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> nn(0, 5);
  std::uniform_int_distribution<int> mm(-8, 8);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_ordering(rng);
    const QuantumNumbers qn{nn(rng), mm(rng)};
    const double b = qn.n_rho + 1.0 + 1e-3 + 10.0 * u(rng);
    const double ec = coulomb_energy(a, b, qn);
    worst = std::max(worst, std::fabs(flat_energy(a, qn.m, coulomb_lambda(b, qn.n_rho)) - ec) /
                                std::max(1.0, std::fabs(ec)));
    const double ap = 0.1 + 3.0 * u(rng);
    const double d = ap * (2.0 * qn.n_rho + 1.0 + 1e-3 + 10.0 * u(rng));
    const double eo = oscillator_energy(a, ap, d, qn);
    worst = std::max(worst, std::fabs(flat_energy(a, qn.m, oscillator_lambda(ap, d, qn.n_rho)) - eo) /
                                std::max(1.0, std::fabs(eo)));
  }
  return {worst <= 1e-12, fmt("1000 draws x 2 models, max deviation %.3g (limit 1e-12)", worst)};
}

Verdict effective_potential_forms() {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> lam(-3.0, 3.0);
  std::uniform_real_distribution<double> ph(-pi, pi);
  const auto f = AngularMassProfile::cos_squared();
  double worst = 0.0;
  int n = 0;
  while (n < 1000) {
    const double phi = ph(rng);
    if (std::fabs(std::cos(phi)) <= 0.1) continue;
    ++n;
    const auto a = random_ordering(rng);
    const double lambda = lam(rng);
    const double q = std::sin(phi);
    const Zeta z = zeta_coefficients(a, lambda);
    const double compact = (z.zeta1 * q * q - z.zeta2) / ((1.0 - q * q) * (1.0 - q * q));
    const double general = w_eff(f, a, lambda, phi);
    worst = std::max(worst, std::fabs(general - compact) / std::max(1.0, std::fabs(compact)));
  }
  return {worst <= 1e-10, fmt("1000 samples, max rel deviation %.3g (limit 1e-10)", worst)};
}

Verdict constraint_gate() {
  bool ok = check_constraint27(named_ordering(OrderingName::MustafaMazharimousavi));
  for (auto name : {OrderingName::GoraWilliams, OrderingName::BenDanielDuke,
                    OrderingName::ZhuKroemer, OrderingName::LiKuhn}) {
    ok = ok && !check_constraint27(named_ordering(name));
  }
  return {ok, "accepts (-1/4,-1/2,-1/4); rejects GW, BDD, ZK, LK"};
}

Verdict toy_bessel() {
  const SeparableModel m{AngularMassProfile::cos_squared(), RadialPotential::power_well(1.0, 1),
                         named_ordering(OrderingName::MustafaMazharimousavi)};
  const auto problem = radial_problem(m, -0.75, {0.5, 20.0});
  const auto order = specfun::BesselOrder::half_odd(0);
  auto u = [&](double rho) { return std::sqrt(rho) * specfun::bessel_j(order, rho); };
  auto residual = [&](double h) {
    double worst = 0.0;
    const int n = static_cast<int>(std::lround((20.0 - 0.5) / h));
    for (int i = 0; i <= n; ++i) {
      const double rho = 0.5 + i * h;
      const double upp = (u(rho + h) - 2.0 * u(rho) + u(rho - h)) / (h * h);
      worst = std::max(worst, std::fabs(-upp + problem.effective_potential(rho) * u(rho)));
    }
    return worst;
  };
  const double r1 = residual(4e-3);
  const double r2 = residual(2e-3);
  const double r3 = residual(1e-3);
  const double order12 = std::log2(r1 / r2);
  const double order23 = std::log2(r2 / r3);

  double bessel_err = 0.0;
  for (double x = 0.1; x <= 30.0 + 1e-12; x += 1e-3) {
    const double want = std::sqrt(2.0 / (pi * x)) * std::sin(x);
    bessel_err = std::max(bessel_err, std::fabs(specfun::bessel_j(order, x) - want));
  }
  const bool ok = order12 > 1.9 && order12 < 2.1 && order23 > 1.9 && order23 < 2.1 && r3 < 1e-6 &&
                  bessel_err <= 1e-12;
  return {ok, fmt("residual %.3g at h=1e-3, orders %.3f/%.3f; J_1/2 max error %.3g", r3, order12,
                  order23, bessel_err)};
}

Verdict zero_zeta_spectrum() {
  const auto toy = toy_zero_zeta_spectrum(4);
  double worst = 0.0;
  bool all = true;
  for (const auto& r : toy.records) {
    worst = std::max(worst, *r.delta);
    all = all && *r.within_tolerance;
  }
  const auto report = degeneracy_report(toy.records);
  int pairs = 0;
  for (const auto& g : report.groups) {
    if (g.members.size() == 2 && g.reasons.size() == 1 &&
        g.reasons[0] == DegeneracyReason::PlusMinusM &&
        toy.records[g.members[0]].qn.m == -toy.records[g.members[1]].qn.m) {
      ++pairs;
    }
  }
  return {all && pairs == 4,
          fmt("|m|<=4: max |E - m^2/2| = %.3g; %d of 4 +-m pairs reported", worst, pairs)};
}

Verdict degeneracy_invariances() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> nn(0, 4);
  std::uniform_int_distribution<int> mm(-8, 8);
  bool swap_exact = true;
  bool m_exact = true;
  double beta_fixed_bracket = 0.0;
  int beta_draws = 0;
  int bracket_moved = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_ordering(rng);
    const auto s = a.swapped();
    const QuantumNumbers qn{nn(rng), mm(rng)};
    const QuantumNumbers qm{qn.n_rho, -qn.m};
    const double lambda = -1.0 + 6.0 * u(rng);
    const double b = qn.n_rho + 1.0 + 1e-3 + 10.0 * u(rng);
    const double ap = 0.1 + 3.0 * u(rng);
    const double d = ap * (2.0 * qn.n_rho + 1.0 + 1e-3 + 10.0 * u(rng));
    swap_exact = swap_exact && flat_energy(a, qn.m, lambda) == flat_energy(s, qn.m, lambda) &&
                 coulomb_energy(a, b, qn) == coulomb_energy(s, b, qn) &&
                 oscillator_energy(a, ap, d, qn) == oscillator_energy(s, ap, d, qn);
    m_exact = m_exact && flat_energy(a, qn.m, lambda) == flat_energy(a, qm.m, lambda) &&
              coulomb_energy(a, b, qn) == coulomb_energy(a, b, qm) &&
              oscillator_energy(a, ap, d, qn) == oscillator_energy(a, ap, d, qm);

    // Another valid triple with a different beta and the same bracket.
    const double target = bracket(a);
    const double beta2 = a.beta() + (u(rng) - 0.5);
    const double sum = -1.0 - beta2;
    const double squares = target + beta2 * (beta2 + 1.0);
    const double disc = 0.5 * squares - 0.25 * sum * sum;
    if (disc >= 0.0) {
      const auto a2 = make_ambiguity(0.5 * sum + std::sqrt(disc), beta2, 0.5 * sum - std::sqrt(disc));
      ++beta_draws;
      for (double e : {flat_energy(a, qn.m, lambda) - flat_energy(a2, qn.m, lambda),
                       coulomb_energy(a, b, qn) - coulomb_energy(a2, b, qn),
                       oscillator_energy(a, ap, d, qn) - oscillator_energy(a2, ap, d, qn)}) {
        beta_fixed_bracket = std::max(beta_fixed_bracket, std::fabs(e));
      }
    }
    // beta moved at fixed (alpha, gamma), off the mirror beta -> -1 - beta.
    double shift = 0.05 + 0.5 * u(rng);
    if (std::fabs(2.0 * a.beta() + 1.0 + shift) < 1e-3) shift += 0.1;
    const double moved = bracket_value(a.alpha(), a.beta() + shift, a.gamma());
    if (std::fabs(moved - target) > 1e-6) ++bracket_moved;
  }
  const bool ok = swap_exact && m_exact && beta_draws > 0 && beta_fixed_bracket <= 1e-12 &&
                  bracket_moved == 1000;
  return {ok, fmt("swap exact: %s; m->-m exact: %s; fixed-bracket beta draws %d, max |dE| %.3g; "
                  "bracket moved in %d/1000",
                  swap_exact ? "yes" : "no", m_exact ? "yes" : "no", beta_draws,
                  beta_fixed_bracket, bracket_moved)};
}

Verdict solver_quality() {
  struct Calibration {
    const char* name;
    es::Grid grid;
    std::function<double(double)> v;
    double prefactor;
  };
  const std::array<Calibration, 2> problems{{
      {"box", es::Grid::dirichlet(0.0, pi, 400), [](double) { return 0.0; }, 1.0},
      {"oscillator", es::Grid::dirichlet(-10.0, 10.0, 400), [](double x) { return 0.5 * x * x; },
       0.5},
  }};
  double lo = 1e9;
  double hi = -1e9;
  double worst_residual = 0.0;
  for (const auto& p : problems) {
    auto factory = [&](const es::Grid& g) { return es::discretize(p.v, g, p.prefactor); };
    const auto order = es::observed_order(factory, p.grid, 4);
    lo = std::min(lo, order.minCoeff());
    hi = std::max(hi, order.maxCoeff());
    for (auto g = p.grid; g.n_points() < 4000; g = g.refined()) {
      const auto op = factory(g);
      const auto r = es::eigen_lowest(op, 4);
      for (es::Index j = 0; j < 4; ++j) {
        const double res = es::residual_norm(op, r.eigenvalues[j],
                                             es::Vector<double>(r.eigenvectors.col(j)));
        worst_residual = std::max(worst_residual, res / op.inf_norm());
      }
    }
  }
  const bool ok = lo >= 1.9 && hi <= 2.1 && worst_residual <= 1e-8;
  return {ok, fmt("observed order in [%.4f, %.4f]; max residual %.3g ||A||_inf", lo, hi,
                  worst_residual)};
}

std::string capture(const std::string& cmd) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
  return out;
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("pdm_polar_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto osc = dir / "oscillator.json";
  const auto coul = dir / "coulomb.json";
  std::ofstream(osc) << R"({"f": "flat", "potential": {"oscillator_like": {"a": 1, "d": 6}}, "ordering": "zhu-kroemer"})";
  std::ofstream(coul) << R"({"f": "flat", "potential": {"coulomb_like": {"omega": 0.25}}, "ordering": "li-kuhn"})";
  bool same = true;
  std::size_t bytes = 0;
  for (const auto& model : {osc, coul}) {
    const std::string cmd = std::string(PDM_POLAR_EXE) + " verify --model " + model.string() +
                            " 2>/dev/null";
    const auto first = capture(cmd);
    const auto second = capture(cmd);
    same = same && !first.empty() && first == second;
    bytes += first.size();
  }
  std::filesystem::remove_all(dir);
  return {same, fmt("two verify runs per model, %zu bytes compared", bytes)};
}

Verdict heun_scan() {
  const auto mm = named_ordering(OrderingName::MustafaMazharimousavi);
  try {
    const auto r = heun_regime_scan(mm, 0.5, {-1.0, 0.0});
    return {std::fabs(r.lambda + 0.75) <= 1e-3,
            fmt("lambda* = %.6f (want -0.75 +- 1e-3)", r.lambda)};
  } catch (const NoRootError& e) {
    const auto& c = e.curve();
    return {false, fmt("NoRoot: E0(lambda) runs %.4f..%.4f over [-1, 0], never reaching 0.5",
                       c.front().second, c.back().second)};
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Verdict (*check)();
  };
  const Criterion criteria[] = {
      {1, "Coulomb-like quantisation", coulomb_quantisation},
      {2, "oscillator-like quantisation", oscillator_quantisation},
      {3, "closed-form pipeline identities", pipeline_identities},
      {4, "general vs compact angular potential", effective_potential_forms},
      {5, "zero-potential ordering gate", constraint_gate},
      {6, "toy-model Bessel solution", toy_bessel},
      {7, "zero-zeta angular spectrum", zero_zeta_spectrum},
      {8, "degeneracy invariances", degeneracy_invariances},
      {9, "solver quality", solver_quality},
      {10, "determinism", determinism},
      {11, "confined-scan recovery of lambda = -3/4", heun_scan},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v{false, ""};
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    if (c.id == 1) std::printf("       1 info: %s\n", coulomb_levels_info().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
