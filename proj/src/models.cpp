// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdm/models.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "pdm/error.hpp"

namespace pdm::models {

namespace es = eigensolve;

namespace {

unsigned resolve_threads(unsigned requested, std::size_t cases) {
  unsigned threads = requested != 0 ? requested : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cases, 1)));
}

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// failure in index order is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = resolve_threads(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) run(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_coulomb(double b, int n_rho) {
  if (n_rho < 0 || !(b > n_rho + 1.0)) {
    throw Error(ErrorKind::DomainError,
                "Coulomb-like quantisation needs b > n_rho + 1 (b=" + std::to_string(b) +
                    ", n_rho=" + std::to_string(n_rho) + ")");
  }
}

void require_oscillator(double a_param, double d, int n_rho) {
  if (!(a_param > 0.0)) {
    throw Error(ErrorKind::DomainError, "oscillator-like model needs a > 0");
  }
  if (n_rho < 0 || !(d / a_param > 2.0 * n_rho + 1.0)) {
    throw Error(ErrorKind::DomainError,
                "oscillator-like quantisation needs d/a > 2 n_rho + 1 (d/a=" +
                    std::to_string(d / a_param) + ", n_rho=" + std::to_string(n_rho) + ")");
  }
}

// Numeric n_rho-th eigenvalue of -U'' + V U on (0, rho_max), Dirichlet at
// both ends, one Richardson refinement.
std::pair<double, double> radial_eigenvalue(const RealFunction& potential, double rho_max,
                                            int n_rho, const SolverOptions& opts) {
  const auto grid = es::Grid::dirichlet(0.0, rho_max, opts.n_points);
  const auto result = es::refine(
      [&](const es::Grid& g) { return es::discretize(potential, g, 1.0); }, grid,
      n_rho + 1);
  return {result.eigenvalues[n_rho], result.convergence_estimate[n_rho]};
}

void fill_comparison(SpectrumRecord& r, double numeric, double convergence, double tol) {
  r.provenance = Provenance::Numeric;
  r.energy_numeric = numeric;
  r.convergence = convergence;
  r.delta = std::fabs(numeric - r.energy_closed);
  r.rel_delta = *r.delta / std::max(std::fabs(r.energy_closed), 1e-300);
  r.within_tolerance = *r.rel_delta <= tol;
}

// The radial problem does not depend on the ordering; any valid set will do.
SeparableModel flat_model(RadialPotential v) {
  return {AngularMassProfile::flat(), std::move(v),
          named_ordering(OrderingName::BenDanielDuke)};
}

}  // namespace

QuantumNumbers make_quantum_numbers(int n_rho, int m) {
  if (n_rho < 0) {
    throw Error(ErrorKind::DomainError, "n_rho must be >= 0");
  }
  return {n_rho, m};
}

std::string_view to_string(Provenance p) {
  return p == Provenance::ClosedForm ? "ClosedForm" : "Numeric";
}

double oscillator_rho_max(double a_param) { return 12.0 / std::sqrt(a_param); }

double flat_energy(const AmbiguitySet& a, int m, double lambda) {
  const double m2 = static_cast<double>(m) * static_cast<double>(m);
  return 0.5 * (m2 - lambda) - bracket(a);
}

double coulomb_lambda(double b, int n_rho) {
  require_coulomb(b, n_rho);
  const double s = b - n_rho - 1.0;
  return s * s - 1.0;
}

double coulomb_energy(const AmbiguitySet& a, double b, QuantumNumbers qn) {
  require_coulomb(b, qn.n_rho);
  const double s = b - qn.n_rho - 1.0;
  const double m2 = static_cast<double>(qn.m) * static_cast<double>(qn.m);
  return 0.5 * (m2 - s * s + 1.0) - bracket(a);
}

double oscillator_lambda(double a_param, double d, int n_rho) {
  require_oscillator(a_param, d, n_rho);
  const double s = d / a_param - 2.0 * n_rho - 1.0;
  return s * s - 1.0;
}

double oscillator_energy(const AmbiguitySet& a, double a_param, double d,
                         QuantumNumbers qn) {
  require_oscillator(a_param, d, qn.n_rho);
  const double s = d / a_param - 2.0 * qn.n_rho - 1.0;
  const double m2 = static_cast<double>(qn.m) * static_cast<double>(qn.m);
  return 0.5 * (m2 - s * s + 1.0) - bracket(a);
}

SpectrumRecord coulomb_state(double ell, int n_rho, const SolverOptions& opts) {
  if (!(ell > 0.0) || n_rho < 0) {
    throw Error(ErrorKind::DomainError, "Coulomb-like state needs l > 0 and n_rho >= 0");
  }
  const double omega = 1.0 / (n_rho + ell + 1.0);
  const double lambda = ell * ell - 1.0;
  // -U'' + V_eff U = 0 with V_eff containing +omega^2; move it to the
  // spectral side.
  const auto radial = radial_problem(flat_model(RadialPotential::coulomb_like(omega)), lambda,
                                     {1e-300, opts.rho_max.value_or(kCoulombRhoMax)});
  const RealFunction shifted = [veff = radial.effective_potential, omega](double rho) {
    return veff(rho) - omega * omega;
  };
  const auto [value, convergence] =
      radial_eigenvalue(shifted, radial.domain.hi, n_rho, opts);

  SpectrumRecord r;
  r.qn = {n_rho, 0};
  r.lambda = lambda;
  r.ell = ell;
  r.energy_closed = -omega * omega;
  fill_comparison(r, value, convergence, opts.tol);
  return r;
}

SpectrumRecord oscillator_state(double a_param, double ell, int n_rho,
                                const SolverOptions& opts) {
  if (!(a_param > 0.0)) {
    throw Error(ErrorKind::DomainError, "oscillator-like model needs a > 0");
  }
  if (!(ell > 0.0) || n_rho < 0) {
    throw Error(ErrorKind::DomainError, "oscillator-like state needs l > 0 and n_rho >= 0");
  }
  const double d = a_param * (2.0 * n_rho + ell + 1.0);
  const double lambda = ell * ell - 1.0;
  const auto radial =
      radial_problem(flat_model(RadialPotential::oscillator_like(a_param, d)), lambda,
                     {1e-300, opts.rho_max.value_or(oscillator_rho_max(a_param))});
  const RealFunction shifted = [veff = radial.effective_potential, d](double rho) {
    return veff(rho) + d;
  };
  const auto [value, convergence] =
      radial_eigenvalue(shifted, radial.domain.hi, n_rho, opts);

  SpectrumRecord r;
  r.qn = {n_rho, 0};
  r.lambda = lambda;
  r.ell = ell;
  r.energy_closed = d;
  fill_comparison(r, value, convergence, opts.tol);
  return r;
}

std::vector<SpectrumRecord> verify_coulomb(double b, int n_rho_max, const SolverOptions& opts) {
  if (n_rho_max < 0) throw Error(ErrorKind::DomainError, "n_rho_max must be >= 0");
  for (int n = 0; n <= n_rho_max; ++n) require_coulomb(b, n);
  std::vector<SpectrumRecord> records(static_cast<std::size_t>(n_rho_max) + 1);
  parallel_for(records.size(), opts.threads, [&](std::size_t i) {
    const int n = static_cast<int>(i);
    const double lambda = coulomb_lambda(b, n);
    records[i] = coulomb_state(std::sqrt(lambda + 1.0), n, opts);
  });
  return records;
}

std::vector<SpectrumRecord> verify_oscillator(double a_param, double d, int n_rho_max,
                                              const SolverOptions& opts) {
  if (n_rho_max < 0) throw Error(ErrorKind::DomainError, "n_rho_max must be >= 0");
  for (int n = 0; n <= n_rho_max; ++n) require_oscillator(a_param, d, n);
  std::vector<SpectrumRecord> records(static_cast<std::size_t>(n_rho_max) + 1);
  parallel_for(records.size(), opts.threads, [&](std::size_t i) {
    const int n = static_cast<int>(i);
    const double lambda = oscillator_lambda(a_param, d, n);
    records[i] = oscillator_state(a_param, std::sqrt(lambda + 1.0), n, opts);
  });
  return records;
}

bool all_within_tolerance(const std::vector<SpectrumRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const SpectrumRecord& r) {
    return r.within_tolerance.value_or(true);
  });
}

double toy_radial_solution(specfun::BesselOrder n, double rho) {
  if (!(rho > 0.0)) {
    throw Error(ErrorKind::DomainError, "toy radial solution needs rho > 0");
  }
  return specfun::bessel_j(n, rho) / rho;
}

ZeroZetaSpectrum toy_zero_zeta_spectrum(int m_max, const SolverOptions& opts) {
  using std::numbers::pi;
  if (m_max < 0) throw Error(ErrorKind::DomainError, "m_max must be >= 0");
  const auto k = static_cast<es::Index>(2 * m_max + 1);
  const auto grid = es::Grid::periodic(-pi, pi, opts.n_points);
  const auto result = es::refine(
      [](const es::Grid& g) { return es::discretize([](double) { return 0.0; }, g, 0.5); },
      grid, k);

  // Index 0 is m = 0; pairs (2j-1, 2j) are the even and odd members of |m| = j.
  auto numeric_for = [&](int m) -> std::pair<double, double> {
    if (m == 0) return {result.eigenvalues[0], result.convergence_estimate[0]};
    const auto j = static_cast<es::Index>(std::abs(m));
    es::Index first = 2 * j - 1;
    es::Index second = 2 * j;
    const auto& v = result.eigenvectors;
    const es::Index n = v.rows();
    // even member: v_i = v_{n-i}
    const double asym = std::abs(v(1, first) - v(n - 1, first));
    const bool first_is_even = asym < 1e-6 * v.col(first).cwiseAbs().maxCoeff();
    const es::Index pick = (m > 0) == first_is_even ? first : second;
    return {result.eigenvalues[pick], result.convergence_estimate[pick]};
  };

  ZeroZetaSpectrum out;
  out.boundary_note =
      "zero-potential line (lambda=-3/4, zeta1=zeta2=0): numeric check uses "
      "-1/2 chi'' on a periodic q-circle of length 2*pi, the period that makes "
      "exp(i m q) single-valued for integer m; the reduced q-domain (-1,1) of "
      "q=sin(phi) carries no boundary condition that would quantise m";
  for (int m = -m_max; m <= m_max; ++m) {
    SpectrumRecord r;
    r.qn = {0, m};
    r.lambda = -0.75;
    r.energy_closed = 0.5 * m * m;
    const auto [value, convergence] = numeric_for(m);
    r.provenance = Provenance::Numeric;
    r.energy_numeric = value;
    r.convergence = convergence;
    r.delta = std::fabs(value - r.energy_closed);
    r.rel_delta = m == 0 ? *r.delta : *r.delta / r.energy_closed;
    r.within_tolerance = (m == 0 ? *r.delta : *r.rel_delta) <= opts.tol;
    out.records.push_back(r);
  }
  return out;
}

double confined_angular_eigenvalue(const AmbiguitySet& a, double lambda,
                                   const ScanOptions& opts) {
  const SeparableModel model{AngularMassProfile::cos_squared(),
                             RadialPotential::power_well(1.0, 1), a};
  const auto problem = angular_problem(model, lambda);
  const double wall = 1.0 - opts.wall_offset;
  const auto grid = es::Grid::dirichlet(-wall, wall, opts.n_points);
  const auto op = es::discretize(problem.effective_potential, grid, 0.5);
  const auto result = es::eigen_lowest(op, opts.eigen_index + 1);
  return result.eigenvalues[opts.eigen_index];
}

ScanResult heun_regime_scan(const AmbiguitySet& a, double energy_target,
                            Interval lambda_range, const ScanOptions& opts) {
  if (!(lambda_range.hi > lambda_range.lo)) {
    throw NoRootError("lambda range is empty or degenerate", {});
  }
  if (opts.curve_samples < 2 || opts.eigen_index < 0 || !(opts.wall_offset > 0.0) ||
      !(opts.wall_offset < 1.0)) {
    throw Error(ErrorKind::DomainError, "invalid scan options");
  }
  // zeta1 = 3/8 + lambda/2 moves with lambda, so a non-degenerate range always
  // leaves the zero-potential line somewhere.

  ScanResult out;
  const int samples = opts.curve_samples;
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    const double lambda = lambda_range.lo + t * (lambda_range.hi - lambda_range.lo);
    out.curve.emplace_back(lambda, confined_angular_eigenvalue(a, lambda, opts));
  }

  std::optional<std::pair<double, double>> bracket_lambda;
  for (std::size_t i = 0; i < out.curve.size(); ++i) {
    const double g0 = out.curve[i].second - energy_target;
    if (g0 == 0.0) {
      bracket_lambda = {out.curve[i].first, out.curve[i].first};
      break;
    }
    if (i + 1 < out.curve.size()) {
      const double g1 = out.curve[i + 1].second - energy_target;
      if ((g0 < 0.0) != (g1 < 0.0)) {
        bracket_lambda = {out.curve[i].first, out.curve[i + 1].first};
        break;
      }
    }
  }
  if (!bracket_lambda) {
    throw NoRootError("target energy " + std::to_string(energy_target) +
                          " is not crossed by the eigenvalue curve on the lambda range",
                      out.curve);
  }

  auto [lo, hi] = *bracket_lambda;
  double g_lo = confined_angular_eigenvalue(a, lo, opts) - energy_target;
  for (int iter = 0; iter < 100 && hi - lo > 1e-12 * std::max(1.0, std::fabs(lo)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = confined_angular_eigenvalue(a, mid, opts) - energy_target;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  out.lambda = 0.5 * (lo + hi);
  const double e_star = confined_angular_eigenvalue(a, out.lambda, opts);
  out.residual = std::fabs(e_star - energy_target);
  ScanOptions tighter = opts;
  tighter.wall_offset = 0.5 * opts.wall_offset;
  out.wall_sensitivity = confined_angular_eigenvalue(a, out.lambda, tighter) - e_star;
  return out;
}

std::string_view to_string(DegeneracyReason r) {
  switch (r) {
    case DegeneracyReason::PlusMinusM: return "plus-minus-m";
    case DegeneracyReason::AlphaGammaSwap: return "alpha-gamma-swap";
    case DegeneracyReason::EqualBracket: return "equal-bracket";
  }
  return "";
}

DegeneracyReport degeneracy_report(const std::vector<SpectrumRecord>& records) {
  if (records.empty()) {
    throw Error(ErrorKind::DomainError, "degeneracy_report needs at least one record");
  }
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return records[x].energy() < records[y].energy();
  });

  DegeneracyReport report;
  for (const std::size_t idx : order) {
    const double e = records[idx].energy();
    if (!report.groups.empty()) {
      auto& last = report.groups.back();
      const double ref = records[last.members.back()].energy();
      if (std::fabs(e - ref) <= 1e-9 * std::max(1.0, std::fabs(ref))) {
        last.members.push_back(idx);
        continue;
      }
    }
    report.groups.push_back({e, {idx}, {}});
  }

  for (auto& group : report.groups) {
    bool pm = false;
    bool swap = false;
    bool equal_bracket = false;
    for (std::size_t i = 0; i < group.members.size(); ++i) {
      for (std::size_t j = i + 1; j < group.members.size(); ++j) {
        const auto& x = records[group.members[i]];
        const auto& y = records[group.members[j]];
        if (!x.ell && !y.ell && x.qn.m != 0 && x.qn.m == -y.qn.m &&
            x.qn.n_rho == y.qn.n_rho) {
          pm = true;
        }
        if (x.ordering && y.ordering && !(*x.ordering == *y.ordering)) {
          if (x.ordering->swapped() == *y.ordering) {
            swap = true;
          } else if (bracket(*x.ordering) == bracket(*y.ordering)) {
            equal_bracket = true;
          } else if (std::fabs(bracket(*x.ordering) - bracket(*y.ordering)) <= 1e-12) {
            equal_bracket = true;
          }
        }
      }
    }
    if (pm) group.reasons.push_back(DegeneracyReason::PlusMinusM);
    if (swap) group.reasons.push_back(DegeneracyReason::AlphaGammaSwap);
    if (equal_bracket) group.reasons.push_back(DegeneracyReason::EqualBracket);
    // group energy: mean of members
    double sum = 0.0;
    for (const auto m : group.members) sum += records[m].energy();
    group.energy = sum / static_cast<double>(group.members.size());
  }
  return report;
}

}  // namespace pdm::models
