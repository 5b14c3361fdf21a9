#include "lgscatter/quad.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "lgscatter/gauss_rules.hpp"
#include "lgscatter/specfun.hpp"

namespace lgs {
namespace {

struct LevelSum {
  cplx value;
  double abs_mass;  // sum of |w f|, the scale for roundoff-limited convergence
};

struct Node {
  double x;
  double w;
};

std::vector<Node> radial_nodes(const QuadratureSpec& spec, int n) {
  std::vector<Node> out(n);
  if (spec.radial_rule == RadialRule::laguerre) {
    const LaguerreRule& rule = gauss_laguerre(n);
    for (int i = 0; i < n; ++i) {
      const double r = spec.radial_scale * rule.nodes[i];
      out[i] = {r, spec.radial_scale * rule.scaled_weights[i] * r * r};
    }
  } else {
    const LegendreRule& rule = gauss_legendre(n);
    const double half = 0.5 * spec.effective_cutoff();
    for (int i = 0; i < n; ++i) {
      const double r = half * (1.0 + rule.nodes[i]);
      out[i] = {r, half * rule.weights[i] * r * r};
    }
  }
  return out;
}

unsigned worker_count(const QuadratureSpec& spec, int tasks) {
  unsigned n = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  return std::min<unsigned>(n, static_cast<unsigned>(std::max(tasks, 1)));
}

// Evaluates task(i) for i in [0, n) into slots, possibly in parallel, then
// reduces in index order.
template <class Task>
LevelSum reduce_in_order(int n, unsigned workers, Task task) {
  std::vector<LevelSum> slots(n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) slots[i] = task(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) slots[i] = task(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  LevelSum total{cplx{}, 0.0};
  for (const auto& s : slots) {
    total.value += s.value;
    total.abs_mass += s.abs_mass;
  }
  return total;
}

bool orders_fit(const std::array<int, 3>& orders, int dims, const QuadratureSpec& spec) {
  const int radial_cap = spec.radial_rule == RadialRule::laguerre ? kMaxLaguerreOrder
                                                                  : kMaxLegendreOrder;
  if (orders[0] > radial_cap) return false;
  long long points = orders[0];
  for (int d = 1; d < dims; ++d) {
    if (orders[d] > kMaxLegendreOrder) return false;
    points *= orders[d];
  }
  return points <= spec.max_points;
}

template <class Level>
QuadratureResult refine(const QuadratureSpec& spec, int dims, std::array<int, 3> orders,
                        Level level) {
  spec.validate();
  QuadratureResult result;
  LevelSum prev = level(orders);
  result.value = prev.value;
  result.orders = orders;
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  for (int d = 1; d <= spec.max_doublings; ++d) {
    std::array<int, 3> next = orders;
    for (int k = 0; k < dims; ++k) next[k] *= 2;
    if (!orders_fit(next, dims, spec)) break;
    orders = next;
    const LevelSum cur = level(orders);
    const double diff = std::abs(cur.value - prev.value);
    result.error_history.push_back(diff);
    result.value = cur.value;
    result.error_estimate = diff;
    result.doublings = d;
    result.orders = orders;
    const double mag = std::abs(cur.value);
    if (diff <= spec.rel_tol * mag || diff <= kRoundoff * cur.abs_mass ||
        (mag < spec.abs_floor && diff < spec.abs_floor)) {
      result.converged = true;
      break;
    }
    prev = cur;
  }
  if (std::abs(result.value) < spec.abs_floor) result.value = 0.0;
  return result;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(abs_floor >= 0.0)) throw std::invalid_argument("abs_floor must be non-negative");
  if (max_doublings < 1) throw std::invalid_argument("max_doublings must be >= 1");
  if (!(radial_scale > 0.0)) throw std::invalid_argument("radial_scale must be positive");
  if (radial_cutoff < 0.0) throw std::invalid_argument("radial_cutoff must be non-negative");
  if (n_r < 1 || n_theta < 1 || n_phi < 1) {
    throw std::invalid_argument("initial orders must be positive");
  }
}

QuadratureResult integrate_3d(const Integrand3D& integrand, const QuadratureSpec& spec) {
  auto level = [&](const std::array<int, 3>& orders) {
    const std::vector<Node> rn = radial_nodes(spec, orders[0]);
    const LegendreRule& tr = gauss_legendre(orders[1]);
    const LegendreRule& pr = gauss_legendre(orders[2]);
    return reduce_in_order(orders[0], worker_count(spec, orders[0]), [&](int i) {
      LevelSum s{cplx{}, 0.0};
      for (int j = 0; j < orders[1]; ++j) {
        const double x = tr.nodes[j];
        const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
        for (int k = 0; k < orders[2]; ++k) {
          const double phi = kPi * (1.0 + pr.nodes[k]);
          const double w = rn[i].w * tr.weights[j] * kPi * pr.weights[k];
          const cplx term = w * integrand(SphericalPoint{rn[i].x, x, sx, phi});
          s.value += term;
          s.abs_mass += std::abs(term);
        }
      }
      return s;
    });
  };
  return refine(spec, 3, {spec.n_r, spec.n_theta, spec.n_phi}, level);
}

QuadratureResult integrate_2d_after_phi(const Integrand2D& integrand, bool winding_ok,
                                        const QuadratureSpec& spec) {
  if (!winding_ok) {
    QuadratureResult zero;
    zero.converged = true;
    return zero;
  }
  auto level = [&](const std::array<int, 3>& orders) {
    const std::vector<Node> rn = radial_nodes(spec, orders[0]);
    const LegendreRule& tr = gauss_legendre(orders[1]);
    LevelSum total = reduce_in_order(orders[0], worker_count(spec, orders[0]), [&](int i) {
      LevelSum s{cplx{}, 0.0};
      for (int j = 0; j < orders[1]; ++j) {
        const double x = tr.nodes[j];
        const double sx = std::sqrt(std::max(0.0, 1.0 - x * x));
        const cplx term = rn[i].w * tr.weights[j] * integrand(rn[i].x, x, sx);
        s.value += term;
        s.abs_mass += std::abs(term);
      }
      return s;
    });
    total.value *= 2.0 * kPi;
    total.abs_mass *= 2.0 * kPi;
    return total;
  };
  return refine(spec, 2, {spec.n_r, spec.n_theta, 1}, level);
}

QuadratureResult integrate_1d(const Integrand1D& integrand, double a, double b,
                              const QuadratureSpec& spec) {
  QuadratureSpec local = spec;
  local.radial_rule = RadialRule::mapped_legendre;
  auto level = [&](const std::array<int, 3>& orders) {
    const LegendreRule& rule = gauss_legendre(orders[0]);
    const double half = 0.5 * (b - a);
    LevelSum s{cplx{}, 0.0};
    for (int i = 0; i < orders[0]; ++i) {
      const cplx term = half * rule.weights[i] * integrand(a + half * (1.0 + rule.nodes[i]));
      s.value += term;
      s.abs_mass += std::abs(term);
    }
    return s;
  };
  return refine(local, 1, {spec.n_r, 1, 1}, level);
}

}  // namespace lgs
