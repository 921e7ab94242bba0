// Copyright 2026 The pdm-polar Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Finite-difference eigensolver for 1D Schrodinger-form operators
//
//   -p d^2/dx^2 + V(x)
//
// on a uniform grid. Second-order central differences give a symmetric
// tridiagonal matrix (plus one corner pair for periodic grids). Eigenvalues
// come from Sturm-sequence bisection, eigenvectors from inverse iteration.
//
// Periodic operators whose sampled diagonal is mirror-symmetric about the
// first grid point are split into even and odd parity blocks, each an ordinary
// tridiagonal matrix; this makes +-m pairs one even and one odd state. Other
// periodic operators go through a cyclic Sturm count and Sherman-Morrison
// solves.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pdm/error.hpp"

namespace pdm::eigensolve {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Boundary { Dirichlet, Periodic };

inline constexpr Index kMinGridPoints = 16;
inline constexpr double kSingularPotential = 1e12;
inline constexpr double kClusterTolerance = 1e-9;
inline constexpr int kMaxInverseIterations = 50;

/// Uniform 1D mesh. Dirichlet grids exclude both endpoints:
/// x_i = x_min + (i+1) h, h = (x_max - x_min)/(n+1). Periodic grids include
/// x_min only: x_i = x_min + i h, h = (x_max - x_min)/n.
template <typename Scalar>
class BasicGrid {
 public:
  static BasicGrid dirichlet(Scalar x_min, Scalar x_max, Index n_points) {
    return BasicGrid(x_min, x_max, n_points, Boundary::Dirichlet);
  }
  static BasicGrid periodic(Scalar x_min, Scalar x_max, Index n_points) {
    return BasicGrid(x_min, x_max, n_points, Boundary::Periodic);
  }

  Scalar x_min() const noexcept { return x_min_; }
  Scalar x_max() const noexcept { return x_max_; }
  Index n_points() const noexcept { return n_points_; }
  Boundary boundary() const noexcept { return boundary_; }

  Scalar spacing() const noexcept {
    const auto cells = boundary_ == Boundary::Dirichlet ? n_points_ + 1 : n_points_;
    return (x_max_ - x_min_) / static_cast<Scalar>(cells);
  }

  Scalar point(Index i) const noexcept {
    const auto offset = boundary_ == Boundary::Dirichlet ? i + 1 : i;
    return x_min_ + static_cast<Scalar>(offset) * spacing();
  }

  Vector<Scalar> points() const {
    Vector<Scalar> x(n_points_);
    for (Index i = 0; i < n_points_; ++i) x[i] = point(i);
    return x;
  }

  /// Same interval at half the spacing.
  BasicGrid refined() const {
    const Index n = boundary_ == Boundary::Dirichlet ? 2 * n_points_ + 1
                                                     : 2 * n_points_;
    return BasicGrid(x_min_, x_max_, n, boundary_);
  }

 private:
  BasicGrid(Scalar x_min, Scalar x_max, Index n_points, Boundary boundary)
      : x_min_(x_min), x_max_(x_max), n_points_(n_points), boundary_(boundary) {
    if (n_points < kMinGridPoints) {
      throw Error(ErrorKind::DomainError,
                  "grid needs at least 16 points, got " + std::to_string(n_points));
    }
    if (!(x_max > x_min) || !std::isfinite(static_cast<double>(x_min)) ||
        !std::isfinite(static_cast<double>(x_max))) {
      throw Error(ErrorKind::DomainError, "grid interval must satisfy x_min < x_max");
    }
  }

  Scalar x_min_;
  Scalar x_max_;
  Index n_points_;
  Boundary boundary_;
};

/// Symmetric tridiagonal matrix; off_diagonal[i] couples i and i+1 and is
/// used for both triangles. Periodic operators add corner_coupling between
/// the first and last unknowns.
template <typename Scalar>
struct BasicOperator {
  Vector<Scalar> diagonal;
  Vector<Scalar> off_diagonal;
  Boundary boundary = Boundary::Dirichlet;
  Scalar corner_coupling = Scalar(0);
  BasicGrid<Scalar> grid;

  Index size() const noexcept { return diagonal.size(); }

  Scalar inf_norm() const {
    const Index n = size();
    Scalar best = Scalar(0);
    for (Index i = 0; i < n; ++i) {
      Scalar row = std::abs(diagonal[i]);
      if (i > 0) row += std::abs(off_diagonal[i - 1]);
      if (i + 1 < n) row += std::abs(off_diagonal[i]);
      if (boundary == Boundary::Periodic && (i == 0 || i == n - 1)) {
        row += std::abs(corner_coupling);
      }
      best = std::max(best, row);
    }
    return best;
  }

  Vector<Scalar> apply(const Vector<Scalar>& v) const {
    const Index n = size();
    Vector<Scalar> out = diagonal.cwiseProduct(v);
    out.head(n - 1) += off_diagonal.cwiseProduct(v.tail(n - 1));
    out.tail(n - 1) += off_diagonal.cwiseProduct(v.head(n - 1));
    if (boundary == Boundary::Periodic) {
      out[0] += corner_coupling * v[n - 1];
      out[n - 1] += corner_coupling * v[0];
    }
    return out;
  }
};

template <typename Scalar>
struct BasicEigenResult {
  Vector<Scalar> eigenvalues;        // ascending
  Matrix<Scalar> eigenvectors;       // unit Euclidean norm columns
  BasicGrid<Scalar> grid;
  Vector<Scalar> convergence_estimate;  // |extrapolated - fine|; zero if unrefined
  /// Inclusive index ranges of eigenvalues equal within 1e-9 relative.
  std::vector<std::pair<Index, Index>> clusters;
};

using Grid = BasicGrid<double>;
using DiscretizedOperator = BasicOperator<double>;
using EigenResult = BasicEigenResult<double>;

/// Central-difference discretisation of -p u'' + V u. Throws
/// Error(PotentialSingular) if V is not finite or exceeds 1e12 in magnitude
/// at a grid point.
template <typename Scalar, typename Potential>
BasicOperator<Scalar> discretize(Potential&& potential,
                                 const BasicGrid<Scalar>& grid,
                                 Scalar kinetic_prefactor = Scalar(1)) {
  const Index n = grid.n_points();
  const Scalar h = grid.spacing();
  const Scalar coupling = -kinetic_prefactor / (h * h);
  BasicOperator<Scalar> op{Vector<Scalar>(n), Vector<Scalar>::Constant(n - 1, coupling),
                           grid.boundary(), Scalar(0), grid};
  for (Index i = 0; i < n; ++i) {
    const Scalar x = grid.point(i);
    const Scalar v = static_cast<Scalar>(potential(x));
    if (!std::isfinite(static_cast<double>(v)) ||
        std::abs(static_cast<double>(v)) > kSingularPotential) {
      throw Error(ErrorKind::PotentialSingular,
                  "potential is singular at x=" + std::to_string(static_cast<double>(x)) +
                      "; shrink the domain");
    }
    op.diagonal[i] = Scalar(2) * kinetic_prefactor / (h * h) + v;
  }
  if (grid.boundary() == Boundary::Periodic) op.corner_coupling = coupling;
  return op;
}

namespace detail {

template <typename Scalar>
Scalar pivot_floor(const BasicOperator<Scalar>& op) {
  return std::numeric_limits<Scalar>::min() /
         std::numeric_limits<Scalar>::epsilon() *
         std::max(Scalar(1), op.inf_norm() * op.inf_norm());
}

// Number of eigenvalues strictly below sigma of the plain tridiagonal part.
template <typename Scalar>
Index sturm_count_tridiagonal(const Vector<Scalar>& d, const Vector<Scalar>& e,
                              Scalar sigma, Scalar pivmin) {
  Index count = 0;
  Scalar q = d[0] - sigma;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0) ++count;
  for (Index i = 1; i < d.size(); ++i) {
    q = d[i] - sigma - e[i - 1] * e[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
  }
  return count;
}

// Inertia of a cyclic tridiagonal matrix minus sigma: symmetric elimination in
// natural order, where each row carries one fill entry in the last column.
template <typename Scalar>
Index sturm_count_cyclic(const BasicOperator<Scalar>& op, Scalar sigma,
                         Scalar pivmin) {
  const Index n = op.size();
  const auto& d = op.diagonal;
  const auto& e = op.off_diagonal;
  Index count = 0;
  Scalar pivot = d[0] - sigma;
  Scalar last_col = op.corner_coupling;  // entry (i, n-1) of the current row
  Scalar last_diag = d[n - 1] - sigma;
  for (Index i = 0; i + 1 < n - 1; ++i) {
    if (std::abs(pivot) < pivmin) pivot = -pivmin;
    if (pivot < 0) ++count;
    const Scalar next_pivot = d[i + 1] - sigma - e[i] * e[i] / pivot;
    const Scalar coupling_to_last = (i + 1 == n - 2) ? e[n - 2] : Scalar(0);
    const Scalar next_last_col = coupling_to_last - e[i] * last_col / pivot;
    last_diag -= last_col * last_col / pivot;
    pivot = next_pivot;
    last_col = next_last_col;
  }
  // row n-2
  if (std::abs(pivot) < pivmin) pivot = -pivmin;
  if (pivot < 0) ++count;
  last_diag -= last_col * last_col / pivot;
  if (std::abs(last_diag) < pivmin) last_diag = -pivmin;
  if (last_diag < 0) ++count;
  return count;
}

// Solve a general tridiagonal system with partial pivoting (LAPACK gtsv).
template <typename Scalar>
Vector<Scalar> solve_tridiagonal(Vector<Scalar> sub, Vector<Scalar> diag,
                                 Vector<Scalar> super, Vector<Scalar> rhs,
                                 Scalar tiny) {
  const Index n = diag.size();
  Vector<Scalar> super2 = Vector<Scalar>::Zero(std::max<Index>(n - 2, 0));
  for (Index i = 0; i + 1 < n; ++i) {
    if (std::abs(diag[i]) >= std::abs(sub[i])) {
      if (diag[i] == Scalar(0)) diag[i] = tiny;
      const Scalar factor = sub[i] / diag[i];
      diag[i + 1] -= factor * super[i];
      rhs[i + 1] -= factor * rhs[i];
      if (i + 2 < n) super2[i] = Scalar(0);
    } else {
      const Scalar factor = diag[i] / sub[i];
      diag[i] = sub[i];
      const Scalar tmp = diag[i + 1];
      diag[i + 1] = super[i] - factor * tmp;
      if (i + 2 < n) {
        super2[i] = super[i + 1];
        super[i + 1] = -factor * super2[i];
      }
      super[i] = tmp;
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= factor * rhs[i];
    }
  }
  if (diag[n - 1] == Scalar(0)) diag[n - 1] = tiny;
  Vector<Scalar> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  if (n > 1) x[n - 2] = (rhs[n - 2] - super[n - 2] * x[n - 1]) / diag[n - 2];
  for (Index i = n - 3; i >= 0; --i) {
    x[i] = (rhs[i] - super[i] * x[i + 1] - super2[i] * x[i + 2]) / diag[i];
  }
  return x;
}

// Solve (op - sigma I) x = rhs.
template <typename Scalar>
Vector<Scalar> shifted_solve(const BasicOperator<Scalar>& op, Scalar sigma,
                             const Vector<Scalar>& rhs) {
  const Index n = op.size();
  const Scalar tiny = std::numeric_limits<Scalar>::epsilon() *
                      std::max(Scalar(1), op.inf_norm());
  Vector<Scalar> diag = op.diagonal.array() - sigma;
  if (op.boundary == Boundary::Dirichlet) {
    return solve_tridiagonal<Scalar>(op.off_diagonal, diag, op.off_diagonal,
                                     rhs, tiny);
  }
  // Cyclic: A = B + u v^T with B tridiagonal (Sherman-Morrison).
  Scalar gamma = -diag[0];
  if (std::abs(gamma) < tiny) gamma = op.inf_norm();
  const Scalar c = op.corner_coupling;
  Vector<Scalar> b_diag = diag;
  b_diag[0] -= gamma;
  b_diag[n - 1] -= c * c / gamma;
  Vector<Scalar> u = Vector<Scalar>::Zero(n);
  u[0] = gamma;
  u[n - 1] = c;
  const Vector<Scalar> y =
      solve_tridiagonal<Scalar>(op.off_diagonal, b_diag, op.off_diagonal, rhs, tiny);
  const Vector<Scalar> z =
      solve_tridiagonal<Scalar>(op.off_diagonal, b_diag, op.off_diagonal, u, tiny);
  const Scalar v_dot_y = y[0] + c / gamma * y[n - 1];
  Scalar denom = Scalar(1) + z[0] + c / gamma * z[n - 1];
  if (std::abs(denom) < tiny) denom = denom < 0 ? -tiny : tiny;
  return y - (v_dot_y / denom) * z;
}

template <typename Scalar>
Index sturm_count(const BasicOperator<Scalar>& op, Scalar sigma) {
  const Scalar pivmin = pivot_floor(op);
  if (op.boundary == Boundary::Dirichlet) {
    return sturm_count_tridiagonal(op.diagonal, op.off_diagonal, sigma, pivmin);
  }
  return sturm_count_cyclic(op, sigma, pivmin);
}

template <typename Scalar>
std::pair<Scalar, Scalar> gershgorin(const BasicOperator<Scalar>& op) {
  const Index n = op.size();
  Scalar lo = std::numeric_limits<Scalar>::max();
  Scalar hi = std::numeric_limits<Scalar>::lowest();
  for (Index i = 0; i < n; ++i) {
    Scalar radius = Scalar(0);
    if (i > 0) radius += std::abs(op.off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(op.off_diagonal[i]);
    if (op.boundary == Boundary::Periodic && (i == 0 || i == n - 1)) {
      radius += std::abs(op.corner_coupling);
    }
    lo = std::min(lo, op.diagonal[i] - radius);
    hi = std::max(hi, op.diagonal[i] + radius);
  }
  const Scalar pad = std::numeric_limits<Scalar>::epsilon() *
                     std::max(Scalar(1), std::max(std::abs(lo), std::abs(hi))) * Scalar(8);
  return {lo - pad, hi + pad};
}

// index-th smallest eigenvalue (0-based) by bisection on the Sturm count.
template <typename Scalar>
Scalar bisect_eigenvalue(const BasicOperator<Scalar>& op, Index index,
                         Scalar lo, Scalar hi) {
  for (int iter = 0; iter < 400; ++iter) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    const Scalar tol = Scalar(1e-12) * std::max(Scalar(1), std::abs(mid));
    if (hi - lo <= tol) break;
    if (sturm_count(op, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return Scalar(0.5) * (lo + hi);
}

template <typename Scalar>
std::vector<std::pair<Index, Index>> find_clusters(const Vector<Scalar>& values) {
  std::vector<std::pair<Index, Index>> clusters;
  Index start = 0;
  for (Index j = 1; j <= values.size(); ++j) {
    const bool same =
        j < values.size() &&
        std::abs(values[j] - values[j - 1]) <=
            Scalar(kClusterTolerance) * std::max(Scalar(1), std::abs(values[j - 1]));
    if (!same) {
      if (j - 1 > start) clusters.emplace_back(start, j - 1);
      start = j;
    }
  }
  return clusters;
}

template <typename Scalar>
void fix_sign(Eigen::Ref<Vector<Scalar>> v) {
  Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0) v = -v;
}

template <typename Scalar>
Vector<Scalar> inverse_iteration(const BasicOperator<Scalar>& op, Scalar lambda,
                                 const Matrix<Scalar>& deflate, Index n_deflate) {
  const Index n = op.size();
  const Scalar target = Scalar(1e-10) * op.inf_norm();
  Vector<Scalar> v(n);
  for (Index i = 0; i < n; ++i) {
    const auto s = static_cast<Scalar>(i);
    v[i] = Scalar(1) + Scalar(0.5) * std::sin(Scalar(0.7) * s + Scalar(0.3) * n_deflate) +
           Scalar(0.25) * std::cos(Scalar(1.9) * s + Scalar(n_deflate));
  }
  auto orthogonalize = [&](Vector<Scalar>& x) {
    for (Index c = 0; c < n_deflate; ++c) x -= deflate.col(c).dot(x) * deflate.col(c);
  };
  orthogonalize(v);
  v.normalize();
  for (int iter = 0; iter < kMaxInverseIterations; ++iter) {
    Vector<Scalar> x = shifted_solve(op, lambda, v);
    orthogonalize(x);
    const Scalar norm = x.norm();
    if (!std::isfinite(static_cast<double>(norm)) || norm == Scalar(0)) break;
    v = x / norm;
    const Scalar residual = (op.apply(v) - lambda * v).norm();
    if (residual <= target) return v;
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "inverse iteration did not converge for eigenvalue " +
                  std::to_string(static_cast<double>(lambda)) +
                  "; request the degenerate cluster jointly");
}

// Eigen-pairs of an operator without parity splitting.
template <typename Scalar>
std::pair<Vector<Scalar>, Matrix<Scalar>> direct_lowest(const BasicOperator<Scalar>& op,
                                                        Index k) {
  const auto [lo, hi] = gershgorin(op);
  Vector<Scalar> values(k);
  for (Index j = 0; j < k; ++j) values[j] = bisect_eigenvalue(op, j, lo, hi);

  Matrix<Scalar> vectors(op.size(), k);
  // Close eigenvalues give inverse-iteration vectors that drift out of
  // orthogonality; reorthogonalise within 1e-3 ||A|| (as LAPACK's stein).
  const Scalar window = Scalar(1e-3) * op.inf_norm();
  Index first = 0;
  for (Index j = 0; j < k; ++j) {
    if (j > 0 && values[j] - values[j - 1] > window) first = j;
    Matrix<Scalar> block = vectors.middleCols(first, j - first);
    vectors.col(j) = inverse_iteration(op, values[j], block, j - first);
    fix_sign<Scalar>(vectors.col(j));
  }
  return {values, vectors};
}

template <typename Scalar>
bool mirror_symmetric(const BasicOperator<Scalar>& op) {
  const Index n = op.size();
  const Scalar scale = op.diagonal.cwiseAbs().maxCoeff();
  const Scalar e = op.off_diagonal[0];
  for (Index i = 0; i < n - 1; ++i) {
    if (op.off_diagonal[i] != e) return false;
  }
  if (op.corner_coupling != e) return false;
  for (Index i = 1; i < n; ++i) {
    if (std::abs(op.diagonal[i] - op.diagonal[n - i]) > Scalar(1e-12) * scale) return false;
  }
  return true;
}

// Even/odd blocks of a mirror-symmetric periodic operator. Basis vectors:
// even b_0 = e_0, b_i = (e_i + e_{n-i})/sqrt2; odd b_i = (e_i - e_{n-i})/sqrt2.
template <typename Scalar>
std::pair<Vector<Scalar>, Matrix<Scalar>> parity_lowest(const BasicOperator<Scalar>& op,
                                                        Index k) {
  const Index n = op.size();
  const Scalar e = op.off_diagonal[0];
  const Scalar root2 = std::sqrt(Scalar(2));
  const bool even_n = n % 2 == 0;
  const Index half = n / 2;  // even n: middle index; odd n: K = (n-1)/2

  auto make_block = [&](Index first, Index last) {
    BasicOperator<Scalar> block{op.diagonal.segment(first, last - first + 1),
                                Vector<Scalar>::Constant(last - first, e),
                                Boundary::Dirichlet, Scalar(0), op.grid};
    return block;
  };

  // even block: indices 0..half
  BasicOperator<Scalar> even = make_block(0, half);
  even.off_diagonal[0] = root2 * e;
  if (even_n) {
    even.off_diagonal[half - 1] = root2 * e;
  } else {
    even.diagonal[half] += e;
  }
  // odd block: indices 1..half-1 (even n) or 1..half (odd n)
  const Index odd_last = even_n ? half - 1 : half;
  BasicOperator<Scalar> odd = make_block(1, odd_last);
  if (!even_n) odd.diagonal[odd.size() - 1] -= e;

  const auto [even_values, even_vectors] =
      direct_lowest(even, std::min(k, even.size()));
  const auto [odd_values, odd_vectors] = direct_lowest(odd, std::min(k, odd.size()));

  // Merge, keeping the even member first inside a degenerate pair.
  Vector<Scalar> values(k);
  Matrix<Scalar> vectors = Matrix<Scalar>::Zero(n, k);
  Index ie = 0;
  Index io = 0;
  for (Index j = 0; j < k; ++j) {
    const bool take_even =
        io >= odd_values.size() ||
        (ie < even_values.size() &&
         even_values[ie] <= odd_values[io] +
                                Scalar(kClusterTolerance) *
                                    std::max(Scalar(1), std::abs(odd_values[io])));
    if (take_even) {
      values[j] = even_values[ie];
      const auto u = even_vectors.col(ie);
      vectors(0, j) = u[0];
      for (Index i = 1; i < half; ++i) {
        vectors(i, j) = u[i] / root2;
        vectors(n - i, j) = u[i] / root2;
      }
      if (even_n) {
        vectors(half, j) = u[half];
      } else {
        vectors(half, j) = u[half] / root2;
        vectors(n - half, j) = u[half] / root2;
      }
      ++ie;
    } else {
      values[j] = odd_values[io];
      const auto u = odd_vectors.col(io);
      for (Index i = 1; i <= odd_last; ++i) {
        vectors(i, j) = u[i - 1] / root2;
        vectors(n - i, j) = -u[i - 1] / root2;
      }
      ++io;
    }
  }
  return {values, vectors};
}

}  // namespace detail

/// Number of eigenvalues strictly below sigma.
template <typename Scalar>
Index count_below(const BasicOperator<Scalar>& op, Scalar sigma) {
  return detail::sturm_count(op, sigma);
}

/// ||(A - lambda I) v||_2
template <typename Scalar>
Scalar residual_norm(const BasicOperator<Scalar>& op, Scalar lambda,
                     const Vector<Scalar>& v) {
  return (op.apply(v) - lambda * v).norm();
}

/// The k smallest eigenpairs. Requires 1 <= k <= n/4.
template <typename Scalar>
BasicEigenResult<Scalar> eigen_lowest(const BasicOperator<Scalar>& op, Index k) {
  if (k < 1 || k > op.size() / 4) {
    throw Error(ErrorKind::DomainError,
                "eigen_lowest needs 1 <= k <= n_points/4, got k=" + std::to_string(k));
  }
  auto [values, vectors] =
      (op.boundary == Boundary::Periodic && detail::mirror_symmetric(op))
          ? detail::parity_lowest(op, k)
          : detail::direct_lowest(op, k);
  BasicEigenResult<Scalar> result{std::move(values), std::move(vectors), op.grid,
                                  Vector<Scalar>::Zero(k), {}};
  result.clusters = detail::find_clusters(result.eigenvalues);
  return result;
}

/// Solve at h and h/2 and Richardson-extrapolate each eigenvalue assuming
/// O(h^2) error. Eigenvectors and grid are those of the fine solve.
template <typename Scalar, typename OperatorFactory>
BasicEigenResult<Scalar> refine(OperatorFactory&& make_operator,
                                const BasicGrid<Scalar>& grid, Index k) {
  const auto coarse = eigen_lowest(make_operator(grid), k);
  auto fine = eigen_lowest(make_operator(grid.refined()), k);
  const Vector<Scalar> extrapolated =
      (Scalar(4) * fine.eigenvalues - coarse.eigenvalues) / Scalar(3);
  fine.convergence_estimate = (extrapolated - fine.eigenvalues).cwiseAbs();
  fine.eigenvalues = extrapolated;
  return fine;
}

/// Observed convergence order per eigenvalue from solves at h, h/2, h/4:
/// log2(|E_h - E_h/2| / |E_h/2 - E_h/4|).
template <typename Scalar, typename OperatorFactory>
Vector<Scalar> observed_order(OperatorFactory&& make_operator,
                              const BasicGrid<Scalar>& grid, Index k) {
  const auto g1 = grid;
  const auto g2 = g1.refined();
  const auto g3 = g2.refined();
  const auto e1 = eigen_lowest(make_operator(g1), k).eigenvalues;
  const auto e2 = eigen_lowest(make_operator(g2), k).eigenvalues;
  const auto e3 = eigen_lowest(make_operator(g3), k).eigenvalues;
  Vector<Scalar> order(k);
  for (Index j = 0; j < k; ++j) {
    order[j] = std::log2(std::abs(e1[j] - e2[j]) / std::abs(e2[j] - e3[j]));
  }
  return order;
}

/// Sign changes along a vector, ignoring entries below tol * max|v|.
template <typename Scalar>
int sign_changes(const Vector<Scalar>& v, Scalar tol = Scalar(1e-8)) {
  const Scalar floor = tol * v.cwiseAbs().maxCoeff();
  int changes = 0;
  int last = 0;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) <= floor) continue;
    const int s = v[i] > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace pdm::eigensolve
