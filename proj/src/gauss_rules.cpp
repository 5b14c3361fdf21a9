#include "lgscatter/gauss_rules.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lgs {
namespace {

LegendreRule build_legendre(int n) {
  LegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      // Re-evaluate the derivative at the converged node for the weight.
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// L_n(x) and L_{n-1}(x), sharing a common factor exp(-log_scale) so that
// large arguments do not overflow.
// Extended precision: the weight formula loses about log10(n) digits in double.
struct ScaledLaguerre {
  long double ln;
  long double lnm1;
  long double log_scale;
};

ScaledLaguerre laguerre_pair(int n, long double x) {
  constexpr long double kBig = 1e150L;
  long double p0 = 1.0L, p1 = 1.0L - x, log_scale = 0.0L;
  if (n == 1) return {p1, p0, 0.0L};
  for (int j = 1; j < n; ++j) {
    const long double p2 = ((2.0L * j + 1.0L - x) * p1 - j * p0) / (j + 1.0L);
    p0 = p1;
    p1 = p2;
    if (std::fabs(p1) > kBig) {
      p0 /= kBig;
      p1 /= kBig;
      log_scale += std::log(kBig);
    }
  }
  return {p1, p0, log_scale};
}

LaguerreRule build_laguerre(int n) {
  LaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);

  // Golub-Welsch eigenvalues for robust node locations.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < n; ++i) sub[i] = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eig = solver.eigenvalues();

  for (int i = 0; i < n; ++i) {
    long double x = eig[i];
    // Newton polish; the step ratio is independent of the common scale.
    for (int iter = 0; iter < 10; ++iter) {
      const ScaledLaguerre p = laguerre_pair(n, x);
      const long double deriv = n * (p.ln - p.lnm1) / x;
      const long double dx = p.ln / deriv;
      x -= dx;
      if (std::fabs(dx) <= 1e-19L * x) break;
    }
    const ScaledLaguerre p = laguerre_pair(n, x);
    // w = x / (n L_{n-1}(x))^2
    const long double log_w = std::log(x) - 2.0L * std::log((long double)n) -
                              2.0L * (std::log(std::fabs(p.lnm1)) + p.log_scale);
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(std::exp(log_w));
    rule.scaled_weights[i] = static_cast<double>(std::exp(log_w + x));
  }
  return rule;
}

template <class Rule, class Build>
const Rule& cached(std::map<int, std::unique_ptr<Rule>>& cache,
                   std::mutex& mutex, int n, Build build) {
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<Rule>(build(n))).first;
  }
  return *it->second;
}

}  // namespace

const LegendreRule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxLegendreOrder) {
    throw std::invalid_argument("gauss_legendre: order " + std::to_string(n) +
                                " out of range");
  }
  static std::map<int, std::unique_ptr<LegendreRule>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, n, build_legendre);
}

const LaguerreRule& gauss_laguerre(int n) {
  if (n < 1 || n > kMaxLaguerreOrder) {
    throw std::invalid_argument("gauss_laguerre: order " + std::to_string(n) +
                                " out of range");
  }
  static std::map<int, std::unique_ptr<LaguerreRule>> cache;
  static std::mutex mutex;
  return cached(cache, mutex, n, build_laguerre);
}

}  // namespace lgs
