// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "pdm/error.hpp"
#include "pdm/json_output.hpp"
#include "pdm/model_file.hpp"
#include "pdm/models.hpp"

namespace pdm::cli {

namespace {

using io::Json;
using models::SpectrumRecord;

struct RunConfig {
  std::string model_path;
  std::string format = "json";
  std::string out_path;
  std::optional<int> n_rho_max;
  int m_max = 2;
  std::optional<double> tol;
  std::optional<long> n_points;
  std::optional<double> rho_max;
  std::string which;
  std::string range;
  int samples = 101;
  std::string state;
  double energy = 0.0;
  std::string lambda_range;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::UnsupportedProfile:
    case ErrorKind::ConstraintViolation:
      return kConfigError;
    case ErrorKind::DomainError:
    case ErrorKind::MassVanishes:
    case ErrorKind::PoleError:
    case ErrorKind::PotentialSingular:
      return kDomainError;
    case ErrorKind::NoRoot:
      return kNoRoot;
    case ErrorKind::ConvergenceFailure:
      return kInternal;
  }
  return kInternal;
}

void emit_error(std::ostream& err, std::string_view kind, const std::string& message) {
  Json j;
  j["error"] = std::string(kind);
  j["message"] = message;
  err << io::dump(j);
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

double parse_double(std::string_view text, const std::string& what) {
  // from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    fail(ErrorKind::ConfigError, "cannot parse " + what + " '" + std::string(text) + "'");
  }
  return value;
}

Interval parse_range(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    fail(ErrorKind::ConfigError, what + " must be LO,HI");
  }
  return {parse_double(std::string_view(text).substr(0, comma), what),
          parse_double(std::string_view(text).substr(comma + 1), what)};
}

unsigned threads_from_env() {
  const char* value = std::getenv("PDM_POLAR_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  unsigned threads = 0;
  const std::string_view text(value);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), threads);
  if (ec != std::errc() || ptr != text.data() + text.size() || threads == 0) {
    fail(ErrorKind::ConfigError, "PDM_POLAR_THREADS must be a positive integer");
  }
  return threads;
}

std::vector<double> linspace(Interval r, int samples) {
  if (samples < 2) fail(ErrorKind::ConfigError, "--samples must be >= 2");
  if (!(r.hi > r.lo)) fail(ErrorKind::ConfigError, "range must satisfy LO < HI");
  std::vector<double> x(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    x[static_cast<std::size_t>(i)] = r.lo + (r.hi - r.lo) * i / (samples - 1);
  }
  return x;
}

std::string_view potential_name(const RadialPotential& v) {
  return std::visit(
      [](const auto& p) -> std::string_view {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerWell>) return "power_well";
        if constexpr (std::is_same_v<T, CoulombLike>) return "coulomb_like";
        if constexpr (std::is_same_v<T, OscillatorLike>) return "oscillator_like";
        return "tabulated";
      },
      v.params());
}

std::string_view profile_name(const AngularMassProfile& f) {
  switch (f.kind()) {
    case AngularMassProfile::Kind::Flat: return "flat";
    case AngularMassProfile::Kind::CosSquared: return "cos2";
    case AngularMassProfile::Kind::Tabulated: return "tabulated";
  }
  return "";
}

std::string_view boundary_name(AngularBoundary b) {
  switch (b) {
    case AngularBoundary::Periodic: return "periodic";
    case AngularBoundary::ConfinedByDivergence: return "confined";
    case AngularBoundary::Unconfined: return "unconfined";
  }
  return "";
}

Json model_json(const io::ModelSpec& spec) {
  Json j;
  j["f"] = std::string(profile_name(spec.model.f));
  j["potential"] = std::string(potential_name(spec.model.v));
  j["ordering"] = ordering_token(spec.model.ordering);
  j["lambda"] = optional_number(spec.lambda);
  return j;
}

// lambda from the model file, else the quantised n_rho = 0 value of the
// Coulomb-like and oscillator-like potentials.
double resolve_lambda(const io::ModelSpec& spec) {
  if (spec.lambda) return *spec.lambda;
  if (const auto* c = std::get_if<CoulombLike>(&spec.model.v.params())) {
    return models::coulomb_lambda(1.0 / c->omega, 0);
  }
  if (const auto* o = std::get_if<OscillatorLike>(&spec.model.v.params())) {
    return models::oscillator_lambda(o->a, o->d, 0);
  }
  fail(ErrorKind::ConfigError, "model needs a \"lambda\" key for this command");
}

Json record_json(const SpectrumRecord& r) {
  Json j;
  j["n_rho"] = r.qn.n_rho;
  j["m"] = r.ell ? Json(nullptr) : Json(r.qn.m);
  if (r.ell) j["ell"] = *r.ell;
  j["lambda"] = r.lambda;
  j["energy_closed"] = r.energy_closed;
  j["energy_numeric"] = optional_number(r.energy_numeric);
  j["delta"] = optional_number(r.delta);
  j["rel_delta"] = optional_number(r.rel_delta);
  j["convergence"] = optional_number(r.convergence);
  j["within_tolerance"] = r.within_tolerance ? Json(*r.within_tolerance) : Json(nullptr);
  j["provenance"] = std::string(models::to_string(r.provenance));
  if (r.ordering) j["ordering"] = ordering_token(*r.ordering);
  return j;
}

std::string records_csv(const std::vector<SpectrumRecord>& records) {
  auto opt = [](const std::optional<double>& v) { return v ? io::format_double(*v) : ""; };
  std::string out = "n_rho,m,lambda,energy_closed,energy_numeric,delta,provenance\n";
  for (const auto& r : records) {
    out += std::to_string(r.qn.n_rho) + ",";
    out += (r.ell ? std::string() : std::to_string(r.qn.m)) + ",";
    out += io::format_double(r.lambda) + ",";
    out += io::format_double(r.energy_closed) + ",";
    out += opt(r.energy_numeric) + ",";
    out += opt(r.delta) + ",";
    out += std::string(models::to_string(r.provenance)) + "\n";
  }
  return out;
}

Json records_json(const std::vector<SpectrumRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return arr;
}

void require_flat(const io::ModelSpec& spec, const char* what) {
  if (spec.model.f.kind() != AngularMassProfile::Kind::Flat) {
    fail(ErrorKind::ConfigError, std::string(what) + " needs the flat angular profile f = 1");
  }
}

// ---------------------------------------------------------------- spectrum

std::string cmd_spectrum(const RunConfig& cfg, const io::ModelSpec& spec) {
  require_flat(spec, "closed-form spectrum");
  if (cfg.m_max < 0) fail(ErrorKind::ConfigError, "--m-max must be >= 0");
  const int n_max = cfg.n_rho_max.value_or(0);
  if (n_max < 0) fail(ErrorKind::ConfigError, "--n-rho-max must be >= 0");
  const AmbiguitySet& a = spec.model.ordering;
  const auto& params = spec.model.v.params();

  std::vector<SpectrumRecord> records;
  auto push = [&](int n, int m, double lambda, double energy) {
    SpectrumRecord r;
    r.qn = models::make_quantum_numbers(n, m);
    r.lambda = lambda;
    r.energy_closed = energy;
    r.ordering = a;
    records.push_back(r);
  };

  if (const auto* c = std::get_if<CoulombLike>(&params)) {
    const double b = 1.0 / c->omega;
    for (int n = 0; n <= n_max; ++n) {
      for (int m = -cfg.m_max; m <= cfg.m_max; ++m) {
        push(n, m, models::coulomb_lambda(b, n), models::coulomb_energy(a, b, {n, m}));
      }
    }
  } else if (const auto* o = std::get_if<OscillatorLike>(&params)) {
    for (int n = 0; n <= n_max; ++n) {
      for (int m = -cfg.m_max; m <= cfg.m_max; ++m) {
        push(n, m, models::oscillator_lambda(o->a, o->d, n),
             models::oscillator_energy(a, o->a, o->d, {n, m}));
      }
    }
  } else {
    if (!spec.lambda) {
      fail(ErrorKind::ConfigError, "flat spectrum for this potential needs a \"lambda\" key");
    }
    for (int m = -cfg.m_max; m <= cfg.m_max; ++m) {
      push(0, m, *spec.lambda, models::flat_energy(a, m, *spec.lambda));
    }
  }

  if (cfg.format == "csv") return records_csv(records);
  Json j;
  j["command"] = "spectrum";
  j["model"] = model_json(spec);
  j["records"] = records_json(records);
  return io::dump(j);
}

// ------------------------------------------------------------------ verify

int largest_valid_n_rho(double span) {
  // largest integer n with span > n
  return static_cast<int>(std::ceil(span)) - 1;
}

std::string cmd_verify(const RunConfig& cfg, const io::ModelSpec& spec, bool& passed) {
  models::SolverOptions opts;
  if (cfg.n_points) {
    if (*cfg.n_points < 64 || *cfg.n_points > 1000000) {
      fail(ErrorKind::ConfigError, "--n-points must lie in [64, 1e6]");
    }
    opts.n_points = *cfg.n_points;
  }
  if (cfg.tol) {
    // No lower bound: a tolerance under the discretisation floor is a valid
    // request that simply fails.
    if (!(*cfg.tol > 0.0) || *cfg.tol > 1e-1) {
      fail(ErrorKind::ConfigError, "--tol must lie in (0, 1e-1]");
    }
    opts.tol = *cfg.tol;
  }
  if (cfg.rho_max) {
    if (!(*cfg.rho_max > 0.0)) fail(ErrorKind::ConfigError, "--rho-max must be > 0");
    opts.rho_max = cfg.rho_max;
  }
  opts.threads = threads_from_env();
  const auto& params = spec.model.v.params();

  Json j;
  j["command"] = "verify";
  j["model"] = model_json(spec);
  j["tol"] = opts.tol;
  j["n_points"] = opts.n_points;

  std::vector<SpectrumRecord> records;
  if (const auto* c = std::get_if<CoulombLike>(&params)) {
    require_flat(spec, "radial verification");
    const double b = 1.0 / c->omega;
    const int n_max = cfg.n_rho_max.value_or(std::min(2, largest_valid_n_rho(b - 1.0)));
    j["rho_max"] = opts.rho_max.value_or(models::kCoulombRhoMax);
    j["reference"] = "-1/(n_rho + l + 1)^2";
    records = models::verify_coulomb(b, n_max, opts);
  } else if (const auto* o = std::get_if<OscillatorLike>(&params)) {
    require_flat(spec, "radial verification");
    const int n_max =
        cfg.n_rho_max.value_or(std::min(2, largest_valid_n_rho((o->d / o->a - 1.0) / 2.0)));
    j["rho_max"] = opts.rho_max.value_or(models::oscillator_rho_max(o->a));
    j["reference"] = "a (2 n_rho + l + 1)";
    records = models::verify_oscillator(o->a, o->d, n_max, opts);
  } else if (spec.model.f.kind() == AngularMassProfile::Kind::CosSquared) {
    if (!check_constraint27(spec.model.ordering)) {
      fail(ErrorKind::ConfigError,
           "angular verification needs an ordering on the zero-potential line");
    }
    if (spec.lambda && std::fabs(*spec.lambda + 0.75) > 1e-12) {
      fail(ErrorKind::ConfigError, "angular verification runs at lambda = -3/4");
    }
    if (cfg.m_max < 0) fail(ErrorKind::ConfigError, "--m-max must be >= 0");
    auto toy = models::toy_zero_zeta_spectrum(cfg.m_max, opts);
    j["reference"] = "m^2/2";
    j["boundary_note"] = toy.boundary_note;
    records = std::move(toy.records);
    const auto report = models::degeneracy_report(records);
    Json groups = Json::array();
    for (const auto& g : report.groups) {
      Json gj;
      gj["energy"] = g.energy;
      Json ms = Json::array();
      for (auto idx : g.members) ms.push_back(records[idx].qn.m);
      gj["m"] = ms;
      Json reasons = Json::array();
      for (auto r : g.reasons) reasons.push_back(std::string(models::to_string(r)));
      gj["reasons"] = reasons;
      groups.push_back(gj);
    }
    j["degeneracy"] = groups;
  } else {
    fail(ErrorKind::ConfigError,
         "verify supports coulomb_like or oscillator_like potentials with f = flat, "
         "or f = cos2 on the zero-potential line");
  }

  passed = models::all_within_tolerance(records);
  if (cfg.format == "csv") return records_csv(records);
  j["all_within_tolerance"] = passed;
  j["records"] = records_json(records);
  return io::dump(j);
}

// ------------------------------------------------------------------ effpot

std::string cmd_effpot(const RunConfig& cfg, const io::ModelSpec& spec) {
  const Interval range = parse_range(cfg.range, "--range");
  const auto x = linspace(range, cfg.samples);
  const double lambda = resolve_lambda(spec);

  Json j;
  j["command"] = "effpot";
  j["model"] = model_json(spec);
  j["which"] = cfg.which;
  j["lambda"] = lambda;
  Json values = Json::array();
  if (cfg.which == "radial") {
    const auto problem = radial_problem(spec.model, lambda, range);
    for (double rho : x) values.push_back(problem.effective_potential(rho));
    j["coordinate"] = "rho";
  } else if (cfg.which == "angular") {
    const auto problem = angular_problem(spec.model, lambda);
    if (spec.model.f.kind() == AngularMassProfile::Kind::CosSquared) {
      if (!(range.lo > problem.domain.lo) || !(range.hi < problem.domain.hi)) {
        fail(ErrorKind::MassVanishes,
             "angular range reaches q = +-1, where f = cos^2 vanishes");
      }
      const Zeta z = zeta_coefficients(spec.model.ordering, lambda);
      j["zeta1"] = z.zeta1;
      j["zeta2"] = z.zeta2;
    }
    j["boundary"] = std::string(boundary_name(problem.boundary));
    j["domain"] = Json::array({problem.domain.lo, problem.domain.hi});
    for (double q : x) values.push_back(problem.effective_potential(q));
    j["coordinate"] = "q";
  } else {
    fail(ErrorKind::ConfigError, "--which must be radial or angular");
  }
  j["x"] = x;
  j["values"] = values;
  return io::dump(j);
}

// ------------------------------------------------------------ wavefunction

struct Selector {
  std::string kind;  // radial | angular
  std::string key;   // n | n_rho | m
  std::string value;
};

[[noreturn]] void bad_selector(const std::string& text) {
  fail(ErrorKind::DomainError,
       "invalid state selector '" + text +
           "' (expected radial:n=P or radial:n=P/2, radial:n_rho=K, angular:m=M)");
}

Selector parse_selector(const std::string& text) {
  const auto colon = text.find(':');
  const auto eq = text.find('=');
  if (colon == std::string::npos || eq == std::string::npos || eq < colon) bad_selector(text);
  Selector s{text.substr(0, colon), text.substr(colon + 1, eq - colon - 1), text.substr(eq + 1)};
  const bool known = (s.kind == "radial" && (s.key == "n" || s.key == "n_rho")) ||
                     (s.kind == "angular" && s.key == "m");
  if (!known || s.value.empty()) bad_selector(text);
  return s;
}

int parse_int(const std::string& text, const std::string& selector) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) bad_selector(selector);
  return value;
}

std::vector<double> interpolate(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys,
                                const std::vector<double>& at) {
  std::vector<double> out;
  out.reserve(at.size());
  for (double x : at) {
    const double* begin = xs.data();
    const double* end = xs.data() + xs.size();
    const auto* it = std::upper_bound(begin, end, x);
    Eigen::Index j = std::clamp<Eigen::Index>(it - begin - 1, 0, xs.size() - 2);
    const double t = (x - xs[j]) / (xs[j + 1] - xs[j]);
    out.push_back((1.0 - t) * ys[j] + t * ys[j + 1]);
  }
  return out;
}

std::string cmd_wavefunction(const RunConfig& cfg, const io::ModelSpec& spec) {
  const Selector sel = parse_selector(cfg.state);
  const Interval range = parse_range(cfg.range, "--range");
  const auto x = linspace(range, cfg.samples);
  const auto& params = spec.model.v.params();

  Json j;
  j["command"] = "wavefunction";
  j["model"] = model_json(spec);
  j["state"] = cfg.state;

  if (sel.kind == "radial" && sel.key == "n") {
    // Toy model: R = J_n(rho)/rho.
    const auto* well = std::get_if<PowerWell>(&params);
    if (well == nullptr || well->v0 != 1.0 || well->k != 1) {
      fail(ErrorKind::ConfigError, "radial:n=... needs the power_well potential with v0 = 1, k = 1");
    }
    int twice = 0;
    if (sel.value.size() > 2 && sel.value.ends_with("/2")) {
      twice = parse_int(sel.value.substr(0, sel.value.size() - 2), cfg.state);
      if (twice % 2 == 0) bad_selector(cfg.state);
    } else {
      twice = 2 * parse_int(sel.value, cfg.state);
    }
    if (twice < 0) bad_selector(cfg.state);
    const specfun::BesselOrder order(twice);
    if (spec.lambda && std::fabs(order.value() * order.value() - (1.0 + *spec.lambda)) > 1e-12) {
      fail(ErrorKind::DomainError, "Bessel order does not match lambda: need n^2 = 1 + lambda");
    }
    Json values = Json::array();
    for (double rho : x) values.push_back(models::toy_radial_solution(order, rho));
    j["coordinate"] = "rho";
    j["provenance"] = "ClosedForm";
    j["x"] = x;
    j["values"] = values;
    return io::dump(j);
  }

  if (sel.kind == "radial") {
    const int n_rho = parse_int(sel.value, cfg.state);
    if (n_rho < 0) bad_selector(cfg.state);
    require_flat(spec, "numeric radial wavefunction");
    double lambda = 0.0;
    double rho_max = 0.0;
    if (const auto* c = std::get_if<CoulombLike>(&params)) {
      lambda = models::coulomb_lambda(1.0 / c->omega, n_rho);
      rho_max = models::kCoulombRhoMax;
    } else if (const auto* o = std::get_if<OscillatorLike>(&params)) {
      lambda = models::oscillator_lambda(o->a, o->d, n_rho);
      rho_max = models::oscillator_rho_max(o->a);
    } else {
      fail(ErrorKind::ConfigError,
           "radial:n_rho=... needs a coulomb_like or oscillator_like potential");
    }
    if (cfg.rho_max) rho_max = *cfg.rho_max;
    if (!(range.lo > 0.0) || range.hi > rho_max) {
      fail(ErrorKind::DomainError, "radial range must lie in (0, rho_max]");
    }
    const auto problem = radial_problem(spec.model, lambda, {1e-300, rho_max});
    const auto grid =
        eigensolve::Grid::dirichlet(0.0, rho_max, cfg.n_points.value_or(4000));
    const auto op = eigensolve::discretize(problem.effective_potential, grid, 1.0);
    const auto result = eigensolve::eigen_lowest(op, n_rho + 1);

    // Grid vector with the walls appended, rescaled to unit L2 norm in rho.
    const auto n = grid.n_points();
    Eigen::VectorXd xs(n + 2);
    Eigen::VectorXd us(n + 2);
    xs[0] = 0.0;
    us[0] = 0.0;
    xs.segment(1, n) = grid.points();
    us.segment(1, n) = result.eigenvectors.col(n_rho) / std::sqrt(grid.spacing());
    xs[n + 1] = rho_max;
    us[n + 1] = 0.0;
    const auto u = interpolate(xs, us, x);
    const Samples r = radial_to_R(
        {Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())),
         Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()))});
    Json values = Json::array();
    for (Eigen::Index i = 0; i < r.values.size(); ++i) values.push_back(r.values[i]);
    j["coordinate"] = "rho";
    j["provenance"] = "Numeric";
    j["lambda"] = lambda;
    j["operator_eigenvalue"] = result.eigenvalues[n_rho];
    j["nodes"] = eigensolve::sign_changes<double>(result.eigenvectors.col(n_rho));
    j["x"] = x;
    j["values"] = values;
    return io::dump(j);
  }

  // angular:m=M, chi(q) = exp(i m q) on the reduced coordinate.
  const int m = parse_int(sel.value, cfg.state);
  double wavenumber = m;
  if (spec.model.f.kind() == AngularMassProfile::Kind::Tabulated) {
    const auto problem = angular_problem(spec.model, resolve_lambda(spec));
    wavenumber = 2.0 * std::numbers::pi * m / problem.domain.hi;
  }
  const auto samples = angular_wavefunction_recompose(
      spec.model.f,
      [wavenumber](double q) { return std::polar(1.0, wavenumber * q); }, x);
  Json values = Json::array();
  Json flags = Json::array();
  for (Eigen::Index i = 0; i < samples.values.size(); ++i) {
    values.push_back(Json::array({samples.values[i].real(), samples.values[i].imag()}));
    flags.push_back(static_cast<bool>(samples.off_principal_branch[static_cast<std::size_t>(i)]));
  }
  j["coordinate"] = "phi";
  j["provenance"] = "ClosedForm";
  j["x"] = x;
  j["values"] = values;
  j["off_principal_branch"] = flags;
  return io::dump(j);
}

// -------------------------------------------------------------------- scan

std::string cmd_scan(const RunConfig& cfg, const io::ModelSpec& spec, std::ostream& err,
                     int& code) {
  if (spec.model.f.kind() != AngularMassProfile::Kind::CosSquared) {
    fail(ErrorKind::ConfigError, "scan needs the cos2 angular profile");
  }
  const Interval range = parse_range(cfg.lambda_range, "--lambda-range");
  if (!(range.hi > range.lo)) fail(ErrorKind::ConfigError, "--lambda-range is empty");
  models::ScanOptions opts;
  if (cfg.n_points) {
    if (*cfg.n_points < 64 || *cfg.n_points > 1000000) {
      fail(ErrorKind::ConfigError, "--n-points must lie in [64, 1e6]");
    }
    opts.n_points = *cfg.n_points;
  }

  Json j;
  j["command"] = "scan";
  j["model"] = model_json(spec);
  j["energy_target"] = cfg.energy;
  j["lambda_range"] = Json::array({range.lo, range.hi});
  j["wall_offset"] = opts.wall_offset;
  auto curve_json = [](const std::vector<std::pair<double, double>>& curve) {
    Json c = Json::array();
    for (const auto& [l, e] : curve) c.push_back(Json::array({l, e}));
    return c;
  };
  try {
    const auto result = models::heun_regime_scan(spec.model.ordering, cfg.energy, range, opts);
    j["curve"] = curve_json(result.curve);
    Json r;
    r["lambda"] = result.lambda;
    r["residual"] = result.residual;
    r["wall_sensitivity"] = result.wall_sensitivity;
    j["result"] = r;
    code = kOk;
  } catch (const NoRootError& e) {
    j["curve"] = curve_json(e.curve());
    j["result"] = nullptr;
    emit_error(err, to_string(e.kind()), e.what());
    code = kNoRoot;
  }
  return io::dump(j);
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) fail(ErrorKind::ConfigError, "cannot write '" + cfg.out_path + "'");
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Separable position-dependent-mass Schroedinger problems in polar coordinates",
               "pdm-polar"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model_path, "Model description (JSON)")->required();
    sub->add_option("--out", cfg.out_path, "Write results to FILE instead of stdout");
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form spectrum table");
  common(spectrum);
  format(spectrum);
  spectrum->add_option("--n-rho-max", cfg.n_rho_max, "Largest radial quantum number");
  spectrum->add_option("--m-max", cfg.m_max, "Largest |m|");

  auto* verify = app.add_subcommand("verify", "Closed form against finite differences");
  common(verify);
  format(verify);
  verify->add_option("--tol", cfg.tol, "Relative tolerance");
  verify->add_option("--n-points", cfg.n_points, "Grid points of the coarse solve");
  verify->add_option("--rho-max", cfg.rho_max, "Radial truncation");
  verify->add_option("--n-rho-max", cfg.n_rho_max, "Largest radial quantum number");
  verify->add_option("--m-max", cfg.m_max, "Largest |m| (angular checks)");

  auto* effpot = app.add_subcommand("effpot", "Sample an effective potential");
  common(effpot);
  effpot->add_option("--which", cfg.which, "radial or angular")->required();
  effpot->add_option("--range", cfg.range, "LO,HI")->required();
  effpot->add_option("--samples", cfg.samples, "Number of samples");

  auto* wavefunction = app.add_subcommand("wavefunction", "Sample a wavefunction");
  common(wavefunction);
  wavefunction->add_option("--state", cfg.state, "radial:n=P[/2], radial:n_rho=K, angular:m=M")
      ->required();
  wavefunction->add_option("--range", cfg.range, "LO,HI")->required();
  wavefunction->add_option("--samples", cfg.samples, "Number of samples");
  wavefunction->add_option("--n-points", cfg.n_points, "Grid points (numeric radial states)");
  wavefunction->add_option("--rho-max", cfg.rho_max, "Radial truncation (numeric states)");

  auto* scan = app.add_subcommand("scan", "Solve E(lambda) = target on the confined angular problem");
  common(scan);
  scan->add_option("--energy", cfg.energy, "Target energy")->required();
  scan->add_option("--lambda-range", cfg.lambda_range, "LO,HI")->required();
  scan->add_option("--n-points", cfg.n_points, "Grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "ConfigError", e.what());
    return kConfigError;
  }

  try {
    const io::ModelSpec spec = io::load_model(cfg.model_path);
    int code = kOk;
    std::string text;
    if (spectrum->parsed()) {
      text = cmd_spectrum(cfg, spec);
    } else if (verify->parsed()) {
      bool passed = true;
      text = cmd_verify(cfg, spec, passed);
      code = passed ? kOk : kToleranceExceeded;
      if (!passed) {
        emit_error(err, "ToleranceExceeded", "at least one case exceeds the tolerance");
      }
    } else if (effpot->parsed()) {
      text = cmd_effpot(cfg, spec);
    } else if (wavefunction->parsed()) {
      text = cmd_wavefunction(cfg, spec);
    } else {
      text = cmd_scan(cfg, spec, err, code);
    }
    write_output(cfg, text, out);
    return code;
  } catch (const Error& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    emit_error(err, "InternalError", e.what());
    return kInternal;
  }
}

}  // namespace pdm::cli
