#pragma once

// Shared implementation of the quantifier kernels. quantifier.cpp
// instantiates it with Parallel = true (OpenMP), quantifier_serial.cpp with
// Parallel = false. Both paths perform identical floating-point work per item
// and reduce serially, so their verdicts match bit for bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "gsteer/errors.hpp"
#include "gsteer/quantifier.hpp"
#include "gsteer/random.hpp"

namespace gsteer::detail {

template <bool Parallel, class F>
void for_each_index(std::ptrdiff_t count, F&& body) {
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
  }
}

/// Real coordinates are interleaved (Re w_0, Im w_0, Re w_1, ...).
inline Vector to_real(const CVector& w) {
  Vector z(2 * w.size());
  for (Index i = 0; i < w.size(); ++i) {
    z(2 * i) = w(i).real();
    z(2 * i + 1) = w(i).imag();
  }
  return z;
}

inline CVector to_complex(const Vector& z) {
  CVector w(z.size() / 2);
  for (Index i = 0; i < w.size(); ++i) w(i) = Complex(z(2 * i), z(2 * i + 1));
  return w;
}

/// g evaluated in real arithmetic. With w = x + i y:
///   w^dag H w = x^T H x + y^T H y,   w^dag S w = 2 i x^T S y  (S antisymmetric).
class GapFunction {
 public:
  explicit GapFunction(const QuantifiedCondition& q)
      : h_(q.hermitian_term()), plus_(q.plus_terms()), minus_(q.minus_term()) {}

  Index complex_dim() const noexcept { return h_.rows(); }
  Index real_dim() const noexcept { return 2 * h_.rows(); }

  double raw(const Vector& x, const Vector& y) const {
    double g = x.dot(h_ * x) + y.dot(h_ * y);
    for (const Matrix& s : plus_) g += 2.0 * std::abs(x.dot(s * y));
    g -= 2.0 * std::abs(x.dot(minus_ * y));
    return g;
  }

  /// g(z) / |z|^2 for interleaved real coordinates.
  double on_sphere(const Vector& z) const {
    Vector x(complex_dim()), y(complex_dim());
    split(z, x, y);
    const double n2 = z.squaredNorm();
    return raw(x, y) / n2;
  }

  /// Gradient of the mu-smoothed gap (|s| ~ sqrt(s^2 + mu^2)) at interleaved z.
  double smoothed(const Vector& z, double mu, Vector* grad) const {
    Vector x(complex_dim()), y(complex_dim());
    split(z, x, y);
    Vector gx = 2.0 * (h_ * x);
    Vector gy = 2.0 * (h_ * y);
    double g = x.dot(h_ * x) + y.dot(h_ * y);
    auto add_form = [&](const Matrix& s, double sign) {
      const double v = 2.0 * x.dot(s * y);
      const double r = std::sqrt(v * v + mu * mu);
      g += sign * r;
      const double dv = sign * v / r;
      gx += dv * 2.0 * (s * y);
      gy -= dv * 2.0 * (s * x);
    };
    for (const Matrix& s : plus_) add_form(s, 1.0);
    add_form(minus_, -1.0);
    if (grad) {
      grad->resize(real_dim());
      for (Index i = 0; i < complex_dim(); ++i) {
        (*grad)(2 * i) = gx(i);
        (*grad)(2 * i + 1) = gy(i);
      }
    }
    return g;
  }

 private:
  void split(const Vector& z, Vector& x, Vector& y) const {
    for (Index i = 0; i < complex_dim(); ++i) {
      x(i) = z(2 * i);
      y(i) = z(2 * i + 1);
    }
  }

  Matrix h_;
  std::vector<Matrix> plus_;
  Matrix minus_;
};

struct LocalResult {
  Vector z;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool still_descending = false;
};

/// Nelder-Mead on the unit sphere: every trial point is renormalized, and the
/// objective g(z)/|z|^2 is scale invariant so the projection never changes a
/// value.
inline LocalResult nelder_mead_sphere(const GapFunction& f, const Vector& start, int max_iters) {
  const Index n = start.size();
  const std::size_t npts = static_cast<std::size_t>(n) + 1;
  constexpr double kStep = 0.1;
  constexpr int kWindow = 50;

  auto project = [](Vector v) {
    const double nrm = v.norm();
    return nrm > 0 ? Vector(v / nrm) : v;
  };

  std::vector<Vector> pts(npts);
  std::vector<double> vals(npts);
  pts[0] = project(start);
  for (Index i = 0; i < n; ++i) {
    Vector p = pts[0];
    p(i) += kStep;
    pts[static_cast<std::size_t>(i) + 1] = project(p);
  }
  for (std::size_t i = 0; i < npts; ++i) vals[i] = f.on_sphere(pts[i]);

  std::vector<std::size_t> order(npts);
  std::vector<double> best_history;
  best_history.reserve(static_cast<std::size_t>(max_iters) + 1);

  LocalResult out;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[npts - 2];
    best_history.push_back(vals[best]);

    const double spread = vals[worst] - vals[best];
    double diameter = 0.0;
    for (std::size_t i = 0; i < npts; ++i) diameter = std::max(diameter, (pts[i] - pts[best]).norm());
    if (spread <= 1e-14 + 1e-12 * std::abs(vals[best]) || diameter <= 1e-12) {
      out.converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < npts; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Vector xr = project(centroid + (centroid - pts[worst]));
    const double fr = f.on_sphere(xr);
    if (fr < vals[best]) {
      const Vector xe = project(centroid + 2.0 * (centroid - pts[worst]));
      const double fe = f.on_sphere(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector xc = outside ? project(centroid + 0.5 * (xr - centroid))
                              : project(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f.on_sphere(xc);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < npts; ++i) {
      if (i == best) continue;
      pts[i] = project(pts[best] + 0.5 * (pts[i] - pts[best]));
      vals[i] = f.on_sphere(pts[i]);
    }
  }

  const auto best_it = std::min_element(vals.begin(), vals.end());
  const std::size_t best = static_cast<std::size_t>(best_it - vals.begin());
  out.z = pts[best];
  out.value = vals[best];
  out.iterations = iter;
  if (!out.converged && best_history.size() > static_cast<std::size_t>(kWindow)) {
    const double earlier = best_history[best_history.size() - 1 - kWindow];
    out.still_descending = earlier - out.value > 1e-12 * (1.0 + std::abs(out.value));
  } else if (!out.converged) {
    out.still_descending = true;
  }
  return out;
}

/// Riemannian gradient descent on the mu-smoothed gap with Armijo
/// backtracking. Returns the polished point (unit norm).
inline Vector polish_smoothed(const GapFunction& f, const Vector& start, int iters, double mu) {
  Vector z = start / start.norm();
  Vector grad;
  double val = f.smoothed(z, mu, &grad);
  double step = 0.1;
  for (int k = 0; k < iters; ++k) {
    Vector rg = grad - grad.dot(z) * z;
    const double gnorm = rg.norm();
    if (gnorm < 1e-14) break;
    bool accepted = false;
    while (step > 1e-16) {
      Vector trial = z - step * rg;
      trial /= trial.norm();
      Vector tgrad;
      const double tval = f.smoothed(trial, mu, &tgrad);
      if (tval <= val - 1e-4 * step * gnorm * gnorm) {
        z = trial;
        val = tval;
        grad = tgrad;
        accepted = true;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return z;
}

inline double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double fraction = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += static_cast<double>(index % base) * fraction;
    index /= base;
    fraction /= static_cast<double>(base);
  }
  return result;
}

/// Halton point `index` (>= 1) mapped to the unit sphere of R^{dim} (dim even)
/// by Box-Muller on consecutive coordinate pairs.
inline Vector halton_sphere_point(std::uint64_t index, Index dim) {
  static constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  Vector z(dim);
  for (Index k = 0; k + 1 < dim; k += 2) {
    const double u1 = radical_inverse(index, kPrimes[k]);
    const double u2 = radical_inverse(index, kPrimes[k + 1]);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    z(k) = rad * std::cos(kTwoPi * u2);
    z(k + 1) = rad * std::sin(kTwoPi * u2);
  }
  return z / z.norm();
}

template <bool Parallel>
GridSweep grid_sweep_impl(const QuantifiedCondition& q, std::size_t resolution) {
  if (q.dim() > 4) {
    throw DimensionError("grid sweep is limited to 2N <= 4 (got " + std::to_string(q.dim()) + ")");
  }
  if (resolution == 0) throw InvalidInputError("grid sweep needs at least one point");
  const GapFunction f(q);
  const Index rdim = f.real_dim();
  std::vector<double> values(resolution);
  for_each_index<Parallel>(static_cast<std::ptrdiff_t>(resolution), [&](std::ptrdiff_t i) {
    values[static_cast<std::size_t>(i)] =
        f.on_sphere(halton_sphere_point(static_cast<std::uint64_t>(i) + 1, rdim));
  });
  const auto it = std::min_element(values.begin(), values.end());
  const auto idx = static_cast<std::uint64_t>(it - values.begin());
  GridSweep out;
  out.min_value = *it;
  out.argmin = to_complex(halton_sphere_point(idx + 1, rdim));
  out.points = resolution;
  return out;
}

template <bool Parallel>
Verdict decide_impl(const QuantifiedCondition& q, const SolverConfig& cfg) {
  cfg.validate();
  const GapFunction f(q);
  const double delta = cfg.decision_margin;

  const std::vector<CVector> structured = structured_candidates(q);
  const std::size_t ns = structured.size();
  const std::size_t total = ns + static_cast<std::size_t>(cfg.samples);

  // Phase 1: structured candidates, then uniform samples with one RNG stream each.
  std::vector<Vector> points(total);
  std::vector<double> values(total);
  for_each_index<Parallel>(static_cast<std::ptrdiff_t>(total), [&](std::ptrdiff_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (i < ns) {
      points[i] = to_real(structured[i]);
    } else {
      Rng rng = make_rng(cfg.seed, i - ns);
      points[i] = to_real(random_unit_vector(rng, q.dim()));
    }
    points[i] /= points[i].norm();
    values[i] = f.on_sphere(points[i]);
  });

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  auto finish_violated = [&](const Vector& z) -> Verdict {
    Vector best = z / z.norm();
    if (cfg.polish_witness) {
      const Vector polished = polish_smoothed(f, best, 200, 1e-9);
      if (f.on_sphere(polished) < f.on_sphere(best)) best = polished;
    }
    Verdict v;
    CVector w = to_complex(best);
    w /= w.norm();
    v.value = evaluate(q, w);
    if (v.value < -delta) {
      v.state = VerdictState::kViolated;
      v.witness = std::move(w);
    } else {
      v.state = VerdictState::kUndecided;
    }
    return v;
  };

  if (values[order.front()] < -delta) {
    const Vector& seed_point = points[order.front()];
    const LocalResult refined = nelder_mead_sphere(f, seed_point, cfg.max_iters);
    return finish_violated(refined.value < values[order.front()] ? refined.z : seed_point);
  }

  // Phase 2: multi-start local minimization from the best Phase-1 points.
  const std::size_t starts = std::min(static_cast<std::size_t>(cfg.starts), total);
  std::vector<LocalResult> results(starts);
  for_each_index<Parallel>(static_cast<std::ptrdiff_t>(starts), [&](std::ptrdiff_t s) {
    results[static_cast<std::size_t>(s)] =
        nelder_mead_sphere(f, points[order[static_cast<std::size_t>(s)]], cfg.max_iters);
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < starts; ++s)
    if (results[s].value < results[best].value) best = s;
  const double best_value = std::min(results[best].value, values[order.front()]);

  if (results[best].value < -delta) return finish_violated(results[best].z);

  Verdict v;
  v.value = best_value;
  const bool open_descent = std::any_of(results.begin(), results.end(), [&](const LocalResult& r) {
    return r.still_descending && r.value < delta;
  });
  if (best_value < -delta / 10.0 || open_descent) {
    v.state = VerdictState::kUndecided;
  } else {
    v.state = VerdictState::kHolds;
  }
  return v;
}

}  // namespace gsteer::detail
