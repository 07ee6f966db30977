#include "qsl/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace qsl {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr double kNoise = 1e-13;

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

Eigen::VectorXd two_loop(const std::deque<Pair>& hist, const Eigen::VectorXd& g) {
  Eigen::VectorXd q = g;
  std::vector<double> alpha(hist.size());
  for (int i = static_cast<int>(hist.size()) - 1; i >= 0; --i) {
    alpha[i] = hist[i].rho * hist[i].s.dot(q);
    q -= alpha[i] * hist[i].y;
  }
  if (!hist.empty()) {
    const Pair& last = hist.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t i = 0; i < hist.size(); ++i) {
    const double beta = hist[i].rho * hist[i].y.dot(q);
    q += (alpha[i] - beta) * hist[i].s;
  }
  return -q;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x0, const LbfgsOptions& opts) {
  LbfgsResult res;
  const Eigen::Index n = x0.size();
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd g(n);
  double fx = f(x, g);
  if (!std::isfinite(fx)) {
    res.x = x;
    res.value = fx;
    res.status = "objective not finite at the starting point";
    return res;
  }

  std::deque<Pair> hist;
  Eigen::VectorXd x_new(n);
  Eigen::VectorXd g_new(n);
  bool restarted = false;

  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const double gnorm = g.norm();
    if (gnorm < opts.gradient_tolerance) {
      res.converged = true;
      res.status = "gradient norm below tolerance";
      break;
    }

    Eigen::VectorXd d = two_loop(hist, g);
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      hist.clear();
      d = -g;
      slope = -g.squaredNorm();
    }

    double step = hist.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
    const double noise = kNoise * std::max(1.0, std::abs(fx));
    bool accepted = false;
    double f_new = 0.0;
    for (int k = 0; k < kMaxBacktracks; ++k) {
      x_new = x + step * d;
      f_new = f(x_new, g_new);
      if (std::isfinite(f_new)) {
        if (f_new <= fx + kArmijo * step * slope) {
          accepted = true;
          break;
        }
        if (f_new <= fx + noise && g_new.norm() < gnorm) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }

    if (!accepted) {
      if (!restarted && !hist.empty()) {
        // Curvature history may be stale; retry from steepest descent.
        hist.clear();
        restarted = true;
        continue;
      }
      res.status = "line search failed to make progress";
      break;
    }
    restarted = false;

    Pair p{x_new - x, g_new - g, 0.0};
    const double sy = p.s.dot(p.y);
    if (sy > 1e-16 * p.s.norm() * p.y.norm()) {
      p.rho = 1.0 / sy;
      hist.push_back(std::move(p));
      if (static_cast<int>(hist.size()) > opts.memory) hist.pop_front();
    }
    x = x_new;
    g = g_new;
    fx = f_new;
  }
  if (it == opts.max_iterations && res.status.empty()) res.status = "iteration limit reached";

  res.x = std::move(x);
  res.value = fx;
  res.gradient_norm = g.norm();
  res.iterations = it;
  if (!res.converged && res.gradient_norm < opts.gradient_tolerance) {
    res.converged = true;
    res.status = "gradient norm below tolerance";
  }
  return res;
}

}  // namespace qsl
