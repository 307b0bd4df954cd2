#include "cspath/solver.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "cspath/rng.hpp"

namespace cspath {

double soft_threshold(double x, double lambda) {
  if (x > lambda) return x - lambda;
  if (x < -lambda) return x + lambda;
  return 0.0;
}

double spectral_norm_sq(const DenseMatrix& a) {
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("spectral_norm_sq: all-zero matrix");

  // Deterministic start vector; a fixed random direction avoids starting
  // orthogonal to the dominant eigenvector of A^T A.
  SplitMix64 rng(0x5eedULL);
  Vector v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.next_gaussian();
  v.normalize();

  double lambda_prev = 0.0;
  const int max_iter = 20000;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = a.transpose() * (a * v);
    const double lambda = v.dot(w);  // Rayleigh quotient, |v| = 1
    const double wn = w.norm();
    if (wn == 0.0) {
      // v landed in the null space; restart once from a fresh direction.
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.next_gaussian();
      v.normalize();
      continue;
    }
    v = w / wn;
    if (it > 0 && std::abs(lambda - lambda_prev) <= 1e-12 * std::abs(lambda))
      return lambda;
    lambda_prev = lambda;
  }
  return lambda_prev;
}

double lasso_objective(const DenseMatrix& a, const Vector& y, double lambda,
                       const Vector& c) {
  const double r = (a * c - y).squaredNorm();
  return 0.5 * r + lambda * c.lpNorm<1>();
}

SparseCode lasso_ista(const DenseMatrix& a, const Vector& y, double lambda,
                      const LassoOptions& opt) {
  if (a.rows() != y.size())
    throw std::invalid_argument("lasso_ista: A rows and y length differ");
  if (lambda < 0.0) throw std::invalid_argument("lasso_ista: lambda < 0");
  if (!all_finite(a) || !all_finite(y))
    throw std::invalid_argument("lasso_ista: non-finite input");
  if (opt.init && opt.init->size() != a.cols())
    throw std::invalid_argument("lasso_ista: warm start has wrong length");

  const Eigen::Index k = a.cols();
  Vector c = opt.init ? *opt.init : Vector::Zero(k);

  // No rows, or no nonzero entry: the quadratic term is constant and the
  // l1 term selects the zero vector.
  if (a.rows() == 0 || a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0) {
    SparseCode out{Vector::Zero(k), lambda};
    if (opt.objective_trace)
      opt.objective_trace->push_back(0.5 * y.squaredNorm());
    return out;
  }

  const double lipschitz = spectral_norm_sq(a);
  const double step = 1.0 / lipschitz;

  Vector residual = a * c - y;
  double obj = 0.5 * residual.squaredNorm() + lambda * c.lpNorm<1>();
  double best_obj = obj;
  if (opt.objective_trace) opt.objective_trace->push_back(obj);

  Vector momentum = c;  // fista extrapolation point
  double t = 1.0;

  for (int it = 0; it < opt.max_iter; ++it) {
    const Vector& point = opt.fista ? momentum : c;
    Vector grad = a.transpose() * (opt.fista ? (a * point - y) : residual);
    Vector next(k);
    for (Eigen::Index i = 0; i < k; ++i)
      next[i] = soft_threshold(point[i] - step * grad[i], lambda * step);

    if (opt.fista) {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      momentum = next + ((t - 1.0) / t_next) * (next - c);
      t = t_next;
    }
    c = std::move(next);
    residual.noalias() = a * c - y;
    const double next_obj =
        0.5 * residual.squaredNorm() + lambda * c.lpNorm<1>();
    if (opt.objective_trace) opt.objective_trace->push_back(next_obj);

#ifndef NDEBUG
    if (!opt.fista)
      assert(next_obj <= obj + 1e-10 * std::max(1.0, std::abs(obj)));
    else
      assert(std::min(next_obj, best_obj) <=
             best_obj + 1e-10 * std::max(1.0, std::abs(best_obj)));
#endif
    best_obj = std::min(best_obj, next_obj);

    const double decrease = obj - next_obj;
    obj = next_obj;
    if (std::abs(decrease) <= opt.tol * std::max(std::abs(obj), 1e-300)) break;
  }
  return SparseCode{std::move(c), lambda};
}

}  // namespace cspath
