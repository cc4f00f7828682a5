#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace payner {

struct LbfgsParams {
  std::size_t history = 10;
  std::size_t max_iterations = 200;
  double convergence_tol = 1e-6;  // relative objective change
  double armijo_c = 1e-4;
  std::size_t max_backtracks = 50;
  double gradient_tol = 1e-10;
};

struct LbfgsResult {
  std::vector<double> x;
  double objective = 0.0;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::string stop_reason;
};

/// f(x, grad) returns the objective and fills grad.
using Objective = std::function<double(const std::vector<double>&, std::vector<double>&)>;
/// Called after every accepted step; return false to stop.
using IterationCallback = std::function<bool(std::size_t iter, double objective, double gnorm,
                                             const std::vector<double>& x)>;

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace detail

/// Limited-memory BFGS with a backtracking Armijo line search (halving).
/// The history is dropped whenever the two-loop direction is not a descent
/// direction.
inline LbfgsResult lbfgs_minimize(const Objective& f, std::vector<double> x, const LbfgsParams& params,
                                  const IterationCallback& callback = {}) {
  using detail::dot;
  const std::size_t n = x.size();
  LbfgsResult res;
  std::vector<double> g(n), g_new(n), d(n), x_new(n);
  double fx = f(x, g);
  ++res.evaluations;
  if (!std::isfinite(fx)) throw std::runtime_error("objective is not finite at the starting point");

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> hist;
  std::vector<double> alpha(params.history);

  res.stop_reason = "max_iterations";
  for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
    const double gnorm = detail::norm(g);
    if (gnorm <= params.gradient_tol) {
      res.converged = true;
      res.stop_reason = "gradient";
      break;
    }
    // Two-loop recursion: d = -H g.
    for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
    for (std::size_t k = hist.size(); k-- > 0;) {
      alpha[k] = hist[k].rho * dot(hist[k].s, d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * hist[k].y[i];
    }
    if (!hist.empty()) {
      const auto& last = hist.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (auto& v : d) v *= gamma;
    }
    for (std::size_t k = 0; k < hist.size(); ++k) {
      const double beta = hist[k].rho * dot(hist[k].y, d);
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - beta) * hist[k].s[i];
    }
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      hist.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = -gnorm * gnorm;
    }

    double step = hist.empty() ? 1.0 / gnorm : 1.0;
    double f_new = 0.0;
    bool accepted = false;
    for (std::size_t b = 0; b <= params.max_backtracks; ++b) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      f_new = f(x_new, g_new);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + params.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.stop_reason = "line_search";
      break;
    }

    Pair p{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      p.s[i] = x_new[i] - x[i];
      p.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-12 && params.history > 0) {
      p.rho = 1.0 / sy;
      if (hist.size() == params.history) hist.pop_front();
      hist.push_back(std::move(p));
    }

    const double rel = std::abs(fx - f_new) / std::max({std::abs(fx), std::abs(f_new), 1.0});
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    res.iterations = iter + 1;
    if (callback && !callback(res.iterations, fx, detail::norm(g), x)) {
      res.stop_reason = "callback";
      break;
    }
    if (rel < params.convergence_tol) {
      res.converged = true;
      res.stop_reason = "relative_change";
      break;
    }
  }
  res.x = std::move(x);
  res.objective = fx;
  res.gradient_norm = detail::norm(g);
  return res;
}

}  // namespace payner
