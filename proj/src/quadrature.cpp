#include "setpart/quadrature.hpp"

#include "setpart/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace setpart {

GaussLegendreRule gauss_legendre(std::size_t order, Precision bits) {
  if (order < 2) fail(ErrorKind::kInvalidArgument, "Gauss-Legendre order must be >= 2");
  static std::mutex cache_mutex;
  static std::map<std::pair<std::size_t, Precision>, GaussLegendreRule> cache;
  {
    std::lock_guard lock(cache_mutex);
    const auto it = cache.find({order, bits});
    if (it != cache.end()) return it->second;
  }

  const Precision work = bits + 32;
  Real eps(1, work);
  mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(bits + 8), MPFR_RNDN);
  GaussLegendreRule rule;
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < order; ++i) {
    Real x(std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(order) + 0.5)),
           work);
    Real derivative(work);
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_order(x) and P_{order-1}(x).
      Real p0(1, work);
      Real p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        Real p2 = (x * p1 * static_cast<double>(2 * k - 1) - p0 * static_cast<double>(k - 1)) /
                  static_cast<double>(k);
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      derivative = (x * p1 - p0) * static_cast<double>(order) / (x * x - 1.0);
      const Real step = p1 / derivative;
      x -= step;
      if (abs(step) < eps) break;
    }
    Real weight = 2.0 / ((1.0 - x * x) * derivative * derivative);
    x.round_to(bits);
    weight.round_to(bits);
    rule.nodes.push_back(std::move(x));
    rule.weights.push_back(std::move(weight));
  }
  std::lock_guard lock(cache_mutex);
  cache.emplace(std::make_pair(order, bits), rule);
  return rule;
}

namespace {

struct Panel {
  Real lo;
  Real hi;
  Complex left;     // rule on the left half
  Complex right;    // rule on the right half
  Complex refined;  // left + right
  double error;     // |refined - rule on the whole panel|
};

struct PanelOrder {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

class PanelIntegrator {
 public:
  PanelIntegrator(const ComplexIntegrand& f, const GaussLegendreRule& rule, Precision bits)
      : f_(f), rule_(rule), bits_(bits) {}

  Complex rule_on(const Real& lo, const Real& hi) {
    const Real half = (hi - lo) / 2.0;
    const Real mid = (hi + lo) / 2.0;
    Complex sum(bits_);
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      Complex value = f_(mid + half * rule_.nodes[i]);
      value *= rule_.weights[i];
      sum += value;
      ++evaluations_;
    }
    return sum * half;
  }

  Panel make_panel(Real lo, Real hi, const Complex& coarse) {
    const Real mid = (lo + hi) / 2.0;
    Complex left = rule_on(lo, mid);
    Complex right = rule_on(mid, hi);
    Complex refined = left + right;
    const double error = abs(refined - coarse).to_double();
    return Panel{std::move(lo), std::move(hi), std::move(left), std::move(right),
                 std::move(refined), error};
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const ComplexIntegrand& f_;
  const GaussLegendreRule& rule_;
  Precision bits_;
  std::size_t evaluations_ = 0;
};

}  // namespace

AdaptiveResult integrate_adaptive(const ComplexIntegrand& f, const std::vector<Interval>& intervals,
                                  const AdaptiveOptions& options, Precision bits) {
  const GaussLegendreRule rule = gauss_legendre(options.order, bits);
  PanelIntegrator integrator(f, rule, bits);
  std::vector<Panel> heap;  // max-heap on error
  const PanelOrder order;
  double total_error = 0.0;

  const std::size_t pieces = std::max<std::size_t>(1, options.initial_panels);
  for (const Interval& interval : intervals) {
    if (!(interval.lo < interval.hi)) continue;
    const Real width = (interval.hi - interval.lo) / static_cast<double>(pieces);
    for (std::size_t i = 0; i < pieces; ++i) {
      Real lo = interval.lo + width * static_cast<double>(i);
      Real hi = i + 1 == pieces ? interval.hi : interval.lo + width * static_cast<double>(i + 1);
      const Complex coarse = integrator.rule_on(lo, hi);
      heap.push_back(integrator.make_panel(std::move(lo), std::move(hi), coarse));
      total_error += heap.back().error;
    }
  }
  std::make_heap(heap.begin(), heap.end(), order);

  // The running total drifts once it has absorbed errors many orders of
  // magnitude apart, so it is re-summed before convergence is accepted.
  const auto resum = [&] {
    total_error = 0.0;
    for (const Panel& panel : heap) total_error += panel.error;
  };
  while (!heap.empty() && heap.size() < options.max_panels) {
    if (total_error <= options.abs_tolerance) {
      resum();
      if (total_error <= options.abs_tolerance) break;
    }
    std::pop_heap(heap.begin(), heap.end(), order);
    Panel worst = std::move(heap.back());
    heap.pop_back();
    total_error -= worst.error;
    const Real mid = (worst.lo + worst.hi) / 2.0;
    heap.push_back(integrator.make_panel(worst.lo, mid, worst.left));
    std::push_heap(heap.begin(), heap.end(), order);
    total_error += heap.back().error;
    heap.push_back(integrator.make_panel(mid, worst.hi, worst.right));
    total_error += heap.back().error;
    std::push_heap(heap.begin(), heap.end(), order);
  }

  AdaptiveResult result{Complex(bits), 0.0, heap.size(), 0, false};
  for (const Panel& panel : heap) {
    result.value += panel.refined;
    result.abs_error_estimate += panel.error;
  }
  result.evaluations = integrator.evaluations();
  result.converged = result.abs_error_estimate <= options.abs_tolerance;
  return result;
}

}  // namespace setpart
