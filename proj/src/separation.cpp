// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdm/separation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "pdm/error.hpp"

namespace pdm {

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;

[[noreturn]] void mass_vanishes(double phi) {
  throw Error(ErrorKind::MassVanishes,
              "angular mass profile vanishes at phi=" + std::to_string(phi));
}

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

void check_table_derivative(const std::vector<double>& supplied,
                            const std::vector<double>& estimate,
                            double h, const char* what) {
  // Centred differences carry an O(h^2) error of their own.
  const double rel = std::max(1e-3, h * h);
  double scale = 0.0;
  for (std::size_t i = 0; i < supplied.size(); ++i) {
    scale = std::max({scale, std::fabs(supplied[i]), std::fabs(estimate[i])});
  }
  if (scale < 1e-14) return;
  for (std::size_t i = 0; i < supplied.size(); ++i) {
    if (std::fabs(supplied[i] - estimate[i]) > rel * scale) {
      throw Error(ErrorKind::ConfigError,
                  std::string("tabulated ") + what +
                      " disagrees with centred differences of f at sample " +
                      std::to_string(i));
    }
  }
}

// Cumulative q(phi) = int_0^phi sqrt(f) on a fine periodic mesh; used for the
// tabulated profile where no closed form exists.
class QuadratureMap {
 public:
  explicit QuadratureMap(const AngularMassProfile& f) : f_(f) {
    const std::size_t cells = f.table().phi.size() * kSubdivision;
    step_ = kTwoPi / static_cast<double>(cells);
    q_.resize(cells + 1, 0.0);
    for (std::size_t j = 0; j < cells; ++j) {
      const double a = step_ * static_cast<double>(j);
      q_[j + 1] = q_[j] + simpson(a, a + step_);
    }
  }

  double period() const { return q_.back(); }

  double forward(double phi) const {
    const double turns = std::floor(phi / kTwoPi);
    const double w = phi - turns * kTwoPi;
    auto j = static_cast<std::size_t>(w / step_);
    j = std::min(j, q_.size() - 2);
    const double a = step_ * static_cast<double>(j);
    return turns * period() + q_[j] + simpson(a, w);
  }

  double inverse(double q) const {
    const double turns = std::floor(q / period());
    const double w = q - turns * period();
    const auto it = std::upper_bound(q_.begin(), q_.end(), w);
    std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - q_.begin() - 1, 0));
    j = std::min(j, q_.size() - 2);
    double phi = step_ * static_cast<double>(j) +
                 step_ * (w - q_[j]) / std::max(q_[j + 1] - q_[j], 1e-300);
    for (int iter = 0; iter < 4; ++iter) {
      const double a = step_ * static_cast<double>(j);
      const double residual = q_[j] + simpson(a, phi) - w;
      phi -= residual / std::sqrt(f_.at(phi).f);
    }
    return turns * kTwoPi + phi;
  }

 private:
  static constexpr std::size_t kSubdivision = 8;

  double root_f(double phi) const {
    const double value = f_.at(phi).f;
    if (!(value > 0.0)) mass_vanishes(phi);
    return std::sqrt(value);
  }

  double simpson(double a, double b) const {
    if (a == b) return 0.0;
    return (b - a) / 6.0 * (root_f(a) + 4.0 * root_f(0.5 * (a + b)) + root_f(b));
  }

  AngularMassProfile f_;
  double step_ = 0.0;
  std::vector<double> q_;
};

}  // namespace

AngularMassProfile AngularMassProfile::tabulated(MassTable table) {
  const std::size_t n = table.phi.size();
  if (n < 16) {
    throw Error(ErrorKind::ConfigError, "tabulated profile needs at least 16 samples");
  }
  if (table.f.size() != n || table.fp.size() != n || table.fpp.size() != n) {
    throw Error(ErrorKind::ConfigError, "tabulated profile arrays differ in length");
  }
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(table.phi[i] - h * static_cast<double>(i)) > 1e-9) {
      throw Error(ErrorKind::ConfigError,
                  "tabulated phi must be the uniform periodic grid i*2pi/n");
    }
    if (!std::isfinite(table.f[i]) || !std::isfinite(table.fp[i]) ||
        !std::isfinite(table.fpp[i])) {
      throw Error(ErrorKind::ConfigError, "tabulated profile has non-finite entries");
    }
  }
  std::vector<double> d1(n);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double next = table.f[(i + 1) % n];
    const double prev = table.f[(i + n - 1) % n];
    d1[i] = (next - prev) / (2.0 * h);
    d2[i] = (next - 2.0 * table.f[i] + prev) / (h * h);
  }
  check_table_derivative(table.fp, d1, h, "f'");
  check_table_derivative(table.fpp, d2, h, "f''");

  AngularMassProfile profile(Kind::Tabulated);
  profile.table_ = std::move(table);
  return profile;
}

MassSample AngularMassProfile::at(double phi) const {
  switch (kind_) {
    case Kind::Flat:
      return {1.0, 0.0, 0.0};
    case Kind::CosSquared: {
      const double c = std::cos(phi);
      const double s2 = std::sin(2.0 * phi);
      const double c2 = std::cos(2.0 * phi);
      return {c * c, -s2, -2.0 * c2};
    }
    case Kind::Tabulated:
      break;
  }
  // Cubic Hermite for f (with f') and f' (with f''), linear for f''.
  const std::size_t n = table_.phi.size();
  const double h = kTwoPi / static_cast<double>(n);
  const double t = wrap_angle(phi) / h;
  auto i = static_cast<std::size_t>(t);
  const double s = t - static_cast<double>(i);
  i %= n;
  const std::size_t j = (i + 1) % n;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  const auto& f = table_.f;
  const auto& fp = table_.fp;
  const auto& fpp = table_.fpp;
  return {h00 * f[i] + h10 * h * fp[i] + h01 * f[j] + h11 * h * fp[j],
          h00 * fp[i] + h10 * h * fpp[i] + h01 * fp[j] + h11 * h * fpp[j],
          (1.0 - s) * fpp[i] + s * fpp[j]};
}

double AngularMassProfile::min_over_period() const {
  switch (kind_) {
    case Kind::Flat: return 1.0;
    case Kind::CosSquared: return 0.0;
    case Kind::Tabulated: break;
  }
  const std::size_t dense = table_.phi.size() * 8;
  double lowest = table_.f.front();
  for (std::size_t i = 0; i < dense; ++i) {
    lowest = std::min(lowest, at(kTwoPi * static_cast<double>(i) / static_cast<double>(dense)).f);
  }
  return lowest;
}

RadialPotential RadialPotential::power_well(double v0, int k) {
  if (!(v0 > 0.0) || k < 1) {
    throw Error(ErrorKind::DomainError, "power well needs v0 > 0 and integer k >= 1");
  }
  return RadialPotential(PowerWell{v0, k});
}

RadialPotential RadialPotential::coulomb_like(double omega) {
  if (!(omega > 0.0)) {
    throw Error(ErrorKind::DomainError, "Coulomb-like potential needs omega > 0");
  }
  return RadialPotential(CoulombLike{omega});
}

RadialPotential RadialPotential::oscillator_like(double a, double d) {
  if (!(a > 0.0) || !std::isfinite(d)) {
    throw Error(ErrorKind::DomainError, "oscillator-like potential needs a > 0");
  }
  return RadialPotential(OscillatorLike{a, d});
}

RadialPotential RadialPotential::tabulated(RadialTable table) {
  if (table.rho.size() < 2 || table.rho.size() != table.v.size()) {
    throw Error(ErrorKind::DomainError,
                "tabulated radial potential needs >= 2 (rho, v) pairs of equal length");
  }
  for (std::size_t i = 0; i < table.rho.size(); ++i) {
    if (!std::isfinite(table.rho[i]) || !std::isfinite(table.v[i]) ||
        (i > 0 && !(table.rho[i] > table.rho[i - 1])) || !(table.rho[0] > 0.0)) {
      throw Error(ErrorKind::DomainError,
                  "tabulated radial grid must be finite, positive and increasing");
    }
  }
  return RadialPotential(std::move(table));
}

double RadialPotential::operator()(double rho) const {
  struct Visitor {
    double rho;
    double operator()(const PowerWell& p) const {
      return -0.5 * p.v0 * std::pow(rho, 2 * p.k);
    }
    double operator()(const CoulombLike& p) const {
      return 0.5 * p.omega * p.omega * rho * rho - rho;
    }
    double operator()(const OscillatorLike& p) const {
      const double r2 = rho * rho;
      return p.a * p.a / 8.0 * r2 * r2 - 0.5 * p.d * r2;
    }
    double operator()(const RadialTable& t) const {
      if (rho < t.rho.front() || rho > t.rho.back()) {
        throw Error(ErrorKind::DomainError,
                    "rho=" + std::to_string(rho) + " outside tabulated radial range");
      }
      const auto it = std::upper_bound(t.rho.begin(), t.rho.end(), rho);
      const std::size_t j = std::min<std::size_t>(
          static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - t.rho.begin(), 1)),
          t.rho.size() - 1);
      const double s = (rho - t.rho[j - 1]) / (t.rho[j] - t.rho[j - 1]);
      return (1.0 - s) * t.v[j - 1] + s * t.v[j];
    }
  };
  return std::visit(Visitor{rho}, params_);
}

double w_tilde(const AngularMassProfile& f, const AmbiguitySet& a, double phi) {
  const MassSample s = f.at(phi);
  if (!(s.f > 0.0)) mass_vanishes(phi);
  const double x = xi(a);
  const double ag = a.alpha() + a.gamma();
  return 0.25 * (x * (4.0 / s.f + s.df * s.df / (s.f * s.f * s.f)) +
                 ag / s.f * (4.0 + s.d2f / s.f));
}

RadialProblem radial_problem(const SeparableModel& m, double lambda, Interval domain) {
  if (!(domain.lo > 0.0) || !(domain.hi > domain.lo)) {
    throw Error(ErrorKind::DomainError, "radial domain must satisfy 0 < rho_min < rho_max");
  }
  auto potential = [v = m.v, lambda](double rho) {
    const double r2 = rho * rho;
    return (0.75 + lambda) / r2 + 2.0 * v(rho) / r2;
  };
  return {potential, lambda, domain};
}

Samples radial_to_R(const Samples& u) {
  if (u.x.size() != u.values.size()) {
    throw Error(ErrorKind::DomainError, "radial samples: x and values differ in length");
  }
  if (u.x.size() > 0 && !(u.x.minCoeff() > 0.0)) {
    throw Error(ErrorKind::DomainError, "radial samples need rho > 0");
  }
  Samples r{u.x, Eigen::VectorXd(u.values.size())};
  for (Eigen::Index i = 0; i < u.x.size(); ++i) {
    r.values[i] = u.values[i] / (u.x[i] * std::sqrt(u.x[i]));
  }
  return r;
}

double pct_map(const AngularMassProfile& f, double phi) {
  switch (f.kind()) {
    case AngularMassProfile::Kind::Flat:
      return phi;
    case AngularMassProfile::Kind::CosSquared:
      // zeros of cos^2 at +-pi/2 bound the admissible path from 0
      if (!(std::fabs(phi) < 0.5 * pi) || f.at(phi).f < kMassGuard) mass_vanishes(phi);
      return std::sin(phi);
    case AngularMassProfile::Kind::Tabulated:
      break;
  }
  return QuadratureMap(f).forward(phi);
}

double w_eff(const AngularMassProfile& f, const AmbiguitySet& a, double lambda,
             double phi) {
  const MassSample s = f.at(phi);
  if (!(s.f >= kMassGuard)) mass_vanishes(phi);
  const double x = xi(a);
  const double ag = a.alpha() + a.gamma();
  const double f2 = s.f * s.f;
  return s.df * s.df / (32.0 * f2 * s.f) * (7.0 - 8.0 * x) -
         s.d2f / (8.0 * f2) * (1.0 + 2.0 * ag) - (x + ag + 0.5 * lambda) / s.f;
}

Zeta zeta_coefficients(const AmbiguitySet& a, double lambda) {
  return {0.375 + 0.5 * lambda,
          0.5 * lambda - 0.25 + constraint27_value(a.alpha(), a.beta(), a.gamma())};
}

AngularProblem angular_problem(const SeparableModel& m, double lambda) {
  const AmbiguitySet ordering = m.ordering;
  switch (m.f.kind()) {
    case AngularMassProfile::Kind::Flat: {
      const double level = w_eff(m.f, ordering, lambda, 0.0);
      return {[level](double) { return level; }, {0.0, kTwoPi}, AngularBoundary::Periodic};
    }
    case AngularMassProfile::Kind::CosSquared: {
      const Zeta z = zeta_coefficients(ordering, lambda);
      const bool vanishing = std::fabs(z.zeta1) <= 1e-12 && std::fabs(z.zeta2) <= 1e-12;
      auto potential = [f = m.f, ordering, lambda](double q) {
        if (!(std::fabs(q) < 1.0)) mass_vanishes(std::asin(std::clamp(q, -1.0, 1.0)));
        return w_eff(f, ordering, lambda, std::asin(q));
      };
      return {potential, {-1.0, 1.0},
              vanishing ? AngularBoundary::Unconfined : AngularBoundary::ConfinedByDivergence};
    }
    case AngularMassProfile::Kind::Tabulated:
      break;
  }
  if (!(m.f.min_over_period() >= kMassGuard)) {
    throw Error(ErrorKind::UnsupportedProfile,
                "tabulated mass profile vanishes inside (0, 2pi); the angular map is not invertible");
  }
  auto map = std::make_shared<const QuadratureMap>(m.f);
  const double period = map->period();
  auto potential = [f = m.f, map, ordering, lambda](double q) {
    return w_eff(f, ordering, lambda, map->inverse(q));
  };
  return {potential, {0.0, period}, AngularBoundary::Periodic};
}

AngularSamples angular_wavefunction_recompose(
    const AngularMassProfile& f,
    const std::function<std::complex<double>(double)>& chi,
    std::span<const double> phis) {
  AngularSamples out{Eigen::VectorXd(static_cast<Eigen::Index>(phis.size())),
                     Eigen::VectorXcd(static_cast<Eigen::Index>(phis.size())),
                     std::vector<bool>(phis.size(), false)};
  std::unique_ptr<QuadratureMap> map;
  if (f.kind() == AngularMassProfile::Kind::Tabulated) map = std::make_unique<QuadratureMap>(f);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double phi = phis[i];
    const MassSample s = f.at(phi);
    if (!(s.f >= kMassGuard)) mass_vanishes(phi);
    double q = phi;
    if (f.kind() == AngularMassProfile::Kind::CosSquared) {
      q = std::sin(phi);
      out.off_principal_branch[i] = std::cos(phi) < 0.0;
    } else if (map) {
      q = map->forward(phi);
    }
    const auto idx = static_cast<Eigen::Index>(i);
    out.phi[idx] = phi;
    out.values[idx] = std::pow(s.f, 0.25) * chi(q);
  }
  return out;
}

}  // namespace pdm
