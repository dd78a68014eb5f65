#include "imbalab/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "imbalab/errors.hpp"

namespace imbalab {

namespace {

// Kronrod abscissae (descending, last one is the centre) and weights; the
// Gauss points are the odd-indexed abscissae.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  int depth;

  bool operator<(const Segment& other) const {
    // Largest error on top; ties resolved by position for determinism.
    if (error != other.error) return error < other.error;
    return lo > other.lo;
  }
};

double checked(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw DomainError("integrate_adaptive: integrand is not finite");
  return y;
}

Segment gauss_kronrod(const std::function<double(double)>& f, double lo, double hi, int depth) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked(f, centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = checked(f, centre - dx) + checked(f, centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half), depth};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                                    const QuadratureOptions& options) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate_adaptive: need finite a < b");
  if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tolerance must be positive");

  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod(f, a, b, 0));
  std::size_t evaluations = 15;
  double total_error = heap.top().error;

  auto summarize = [&](std::priority_queue<Segment> segments) {
    QuadratureResult r;
    r.evaluations = evaluations;
    r.intervals = segments.size();
    // Sum in a fixed (heap) order for determinism.
    while (!segments.empty()) {
      r.value += segments.top().value;
      r.error += segments.top().error;
      segments.pop();
    }
    return r;
  };

  while (total_error > tol) {
    const Segment worst = heap.top();
    if (worst.depth >= options.max_depth || heap.size() >= options.max_intervals) {
      const auto best = summarize(heap);
      throw QuadratureError("integrate_adaptive: tolerance not reached within the subdivision limit", best.value,
                            best.error);
    }
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod(f, worst.lo, mid, worst.depth + 1);
    const Segment right = gauss_kronrod(f, mid, worst.hi, worst.depth + 1);
    evaluations += 30;
    heap.push(left);
    heap.push(right);
    total_error += left.error + right.error - worst.error;
    if (total_error <= tol) {
      // Re-sum to shed the drift of the running update before deciding.
      total_error = summarize(heap).error;
    }
  }
  return summarize(heap);
}

}  // namespace imbalab
