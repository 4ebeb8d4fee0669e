#include "kgsharp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

namespace kgsharp::quad {

namespace {

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Maps the unit-interval variable u of a piece onto x.
struct Piece {
  enum class Kind { kIdentity, kLeftPower, kRightPower } kind = Kind::kIdentity;
  double anchor = 0.0;  // a for kLeftPower, b for kRightPower
  double length = 0.0;
  double power = 1.0;
  double lo = 0.0;  // piece-local integration range
  double hi = 0.0;

  [[nodiscard]] std::pair<double, double> map(double u) const {
    switch (kind) {
      case Kind::kIdentity:
        return {u, 1.0};
      case Kind::kLeftPower:
        return {anchor + length * std::pow(u, power), length * power * std::pow(u, power - 1.0)};
      case Kind::kRightPower:
        return {anchor - length * std::pow(u, power), length * power * std::pow(u, power - 1.0)};
    }
    return {u, 1.0};
  }
};

struct Segment {
  int piece = 0;
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
  double companion = 0.0;
  double abs_value = 0.0;

  bool operator<(const Segment& other) const { return error < other.error; }
};

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

// Exponent of the substitution x = a + L u^p for an endpoint (x-a)^alpha.
double substitution_power(double alpha) {
  if (alpha >= 0.0 && is_integer(alpha)) return 1.0;
  if (is_integer(2.0 * alpha)) return 2.0;
  if (alpha < 0.0) return 1.0 / (1.0 + alpha);
  return 1.0;
}

template <class F>
Segment apply_rule(const F& f, const Piece& piece, int index, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  auto eval = [&](double u) -> Sample {
    const auto [x, jac] = piece.map(u);
    Sample s = f(x);
    if (!std::isfinite(s.value)) throw NonFiniteIntegrand(x);
    s.value *= jac;
    s.error *= std::abs(jac);
    return s;
  };

  std::array<double, 15> fv{};
  const Sample fc = eval(center);
  fv[7] = fc.value;
  double kronrod = fc.value * kWgk[7];
  double gauss = fc.value * kWg[3];
  double companion = fc.error * kWgk[7];
  double abs_sum = std::abs(fc.value) * kWgk[7];

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Sample f1 = eval(center - dx);
    const Sample f2 = eval(center + dx);
    fv[j] = f1.value;
    fv[14 - j] = f2.value;
    kronrod += kWgk[j] * (f1.value + f2.value);
    companion += kWgk[j] * (f1.error + f2.error);
    abs_sum += kWgk[j] * (std::abs(f1.value) + std::abs(f2.value));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1.value + f2.value);
  }

  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc.value - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  const double result = kronrod * half;
  const double result_abs = abs_sum * std::abs(half);
  const double result_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  if (result_abs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * result_abs, err);

  return Segment{index, lo, hi, result, err, companion * std::abs(half), result_abs};
}

struct AdaptiveOutcome {
  QuadratureResult result;
  double companion = 0.0;
};

template <class F>
AdaptiveOutcome adaptive(const F& f, const std::vector<Piece>& pieces, int panels,
                         const QuadratureConfig& cfg) {
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  double total_comp = 0.0;
  int evaluated = 0;

  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const Piece& piece = pieces[p];
    const int n = piece.kind == Piece::Kind::kIdentity ? std::max(1, panels) : 1;
    const double width = (piece.hi - piece.lo) / n;
    for (int i = 0; i < n; ++i) {
      const double lo = piece.lo + i * width;
      const double hi = i + 1 == n ? piece.hi : lo + width;
      Segment s = apply_rule(f, piece, static_cast<int>(p), lo, hi);
      total += s.value;
      total_err += s.error;
      total_comp += s.companion;
      heap.push(s);
      ++evaluated;
    }
  }

  auto tolerance = [&] { return std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol); };

  bool converged = total_err <= tolerance();
  while (!converged && evaluated < cfg.max_subdivisions) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Piece& piece = pieces[static_cast<std::size_t>(worst.piece)];
    // Interval can no longer be split in floating point.
    if (!(mid > worst.lo && mid < worst.hi) ||
        std::abs(worst.hi - worst.lo) <= 4.0 * kEps * std::max(std::abs(mid), kTiny)) {
      break;
    }
    heap.pop();
    Segment left = apply_rule(f, piece, worst.piece, worst.lo, mid);
    Segment right = apply_rule(f, piece, worst.piece, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_comp += left.companion + right.companion - worst.companion;
    heap.push(left);
    heap.push(right);
    evaluated += 1;
    converged = total_err <= tolerance();
  }

  // Re-sum to shed accumulated cancellation in the running totals.
  double value = 0.0;
  double err = 0.0;
  double comp = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    comp += heap.top().companion;
    heap.pop();
  }
  converged = err <= std::max(cfg.rel_tol * std::abs(value), cfg.abs_tol);
  return {QuadratureResult{value, err, evaluated, converged}, comp};
}

std::vector<Piece> build_pieces(double a, double b, const EndpointBehavior& ends) {
  std::vector<double> cuts{a};
  for (double bp : ends.breakpoints) {
    if (bp > a && bp < b) cuts.push_back(bp);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);

  const double p_left = ends.left_exponent ? substitution_power(*ends.left_exponent) : 1.0;
  const double p_right = ends.right_exponent ? substitution_power(*ends.right_exponent) : 1.0;

  std::vector<Piece> pieces;
  const std::size_t n = cuts.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    const bool sub_left = i == 0 && p_left != 1.0;
    const bool sub_right = i + 1 == n && p_right != 1.0;
    if (sub_left && sub_right) {
      const double mid = 0.5 * (lo + hi);
      pieces.push_back({Piece::Kind::kLeftPower, lo, mid - lo, p_left, 0.0, 1.0});
      pieces.push_back({Piece::Kind::kRightPower, hi, hi - mid, p_right, 0.0, 1.0});
    } else if (sub_left) {
      pieces.push_back({Piece::Kind::kLeftPower, lo, hi - lo, p_left, 0.0, 1.0});
    } else if (sub_right) {
      pieces.push_back({Piece::Kind::kRightPower, hi, hi - lo, p_right, 0.0, 1.0});
    } else {
      pieces.push_back({Piece::Kind::kIdentity, 0.0, 0.0, 1.0, lo, hi});
    }
  }
  return pieces;
}

template <class F>
AdaptiveOutcome run_finite(const F& f, double a, double b, const QuadratureConfig& cfg,
                           const EndpointBehavior& ends) {
  cfg.validate();
  if (!(a < b)) {
    if (a == b) return {};
    throw std::invalid_argument("integrate_1d: requires a < b");
  }
  const auto pieces = build_pieces(a, b, ends);
  int panels = ends.initial_panels;
  if (!ends.breakpoints.empty()) {
    panels = std::max(1, panels / static_cast<int>(pieces.size()));
  }
  return adaptive(f, pieces, panels, cfg);
}

// Walks outward from a until |f| stays below threshold * running peak.
template <class F>
std::pair<double, bool> find_truncation(const F& f, double a, const QuadratureConfig& cfg,
                                        double scale, double& tail_bound) {
  constexpr int kMaxSamples = 800;
  constexpr int kQuietNeeded = 4;
  double step = std::max(scale, 1e-300) / 8.0;
  double x = a;
  double peak = 0.0;
  double last = 0.0;
  int quiet = 0;
  for (int i = 0; i < kMaxSamples; ++i) {
    x += step;
    step *= 1.12;
    const double v = std::abs(f(x).value);
    if (!std::isfinite(v)) throw NonFiniteIntegrand(x);
    peak = std::max(peak, v);
    last = v;
    if (peak > 0.0 && v <= cfg.truncation_threshold * peak) {
      if (++quiet >= kQuietNeeded) {
        tail_bound = last * scale;
        return {x, true};
      }
    } else {
      quiet = 0;
    }
    if (!std::isfinite(x)) break;
  }
  tail_bound = last * scale;
  // Identically zero along the whole march.
  return {x, peak == 0.0};
}

template <class F>
AdaptiveOutcome run_semi_infinite(const F& f, double a, const QuadratureConfig& cfg,
                                  const SemiInfiniteOptions& opts) {
  cfg.validate();
  double tail = 0.0;
  const auto [end, decayed] = find_truncation(f, a, cfg, opts.scale, tail);
  EndpointBehavior ends;
  ends.left_exponent = opts.left_exponent;
  ends.initial_panels = opts.initial_panels;
  AdaptiveOutcome out = run_finite(f, a, end, cfg, ends);
  out.result.error_estimate += tail;
  if (!decayed) out.result.converged = false;
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be >= 0");
  if (max_subdivisions < 1) throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
  if (!(truncation_threshold > 0.0)) {
    throw std::invalid_argument("QuadratureConfig: truncation_threshold must be > 0");
  }
}

QuadratureConfig QuadratureConfig::inner() const {
  QuadratureConfig c = *this;
  c.rel_tol = rel_tol / 2.0;
  c.abs_tol = abs_tol / 2.0;
  return c;
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  error_estimate += other.error_estimate;
  subdivisions_used += other.subdivisions_used;
  converged = converged && other.converged;
  return *this;
}

QuadratureResult QuadratureResult::scaled(double factor) const {
  QuadratureResult r = *this;
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

NonFiniteIntegrand::NonFiniteIntegrand(double abscissa)
    : std::runtime_error([abscissa] {
        std::ostringstream os;
        os.precision(17);
        os << "integrand is not finite at x = " << abscissa;
        return os.str();
      }()),
      abscissa_(abscissa) {}

QuadratureResult integrate_1d(const Integrand& f, double a, double b, const QuadratureConfig& cfg,
                              const EndpointBehavior& ends) {
  auto g = [&f](double x) { return Sample{f(x), 0.0}; };
  return run_finite(g, a, b, cfg, ends).result;
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureConfig& cfg,
                                         const SemiInfiniteOptions& opts) {
  auto g = [&f](double x) { return Sample{f(x), 0.0}; };
  return run_semi_infinite(g, a, cfg, opts).result;
}

QuadratureResult integrate_1d_nested(const NestedIntegrand& f, double a, double b,
                                     const QuadratureConfig& cfg, const EndpointBehavior& ends) {
  AdaptiveOutcome out = run_finite(f, a, b, cfg, ends);
  out.result.error_estimate += std::abs(out.companion);
  return out.result;
}

QuadratureResult integrate_semi_infinite_nested(const NestedIntegrand& f, double a,
                                                const QuadratureConfig& cfg,
                                                const SemiInfiniteOptions& opts) {
  AdaptiveOutcome out = run_semi_infinite(f, a, cfg, opts);
  out.result.error_estimate += std::abs(out.companion);
  return out.result;
}

namespace {

QuadratureResult iterate_axis(const std::function<double(std::span<const double>)>& f,
                              std::span<const AxisBounds> axes, std::vector<double>& vars,
                              std::size_t level, const QuadratureConfig& cfg) {
  const AxisBounds& axis = axes[level];
  const auto [lo, hi] = axis.bounds(std::span<const double>(vars.data(), level));
  const bool last = level + 1 == axes.size();

  bool inner_converged = true;
  NestedIntegrand g = [&](double x) -> Sample {
    vars[level] = x;
    if (last) return Sample{f(std::span<const double>(vars.data(), vars.size())), 0.0};
    QuadratureResult r = iterate_axis(f, axes, vars, level + 1, cfg.inner());
    inner_converged = inner_converged && r.converged;
    return Sample{r.value, r.error_estimate};
  };

  const QuadratureConfig own = last ? cfg : cfg.inner();
  QuadratureResult r;
  if (!(hi > lo)) return r;
  if (std::isinf(hi)) {
    SemiInfiniteOptions opts;
    opts.scale = axis.scale;
    opts.left_exponent = axis.ends.left_exponent;
    opts.initial_panels = axis.ends.initial_panels;
    r = integrate_semi_infinite_nested(g, lo, own, opts);
  } else {
    r = integrate_1d_nested(g, lo, hi, own, axis.ends);
  }
  r.converged = r.converged && inner_converged;
  return r;
}

}  // namespace

QuadratureResult integrate_iterated(const std::function<double(std::span<const double>)>& f,
                                    std::span<const AxisBounds> axes, const QuadratureConfig& cfg) {
  if (axes.size() != 2 && axes.size() != 3) {
    throw std::invalid_argument("integrate_iterated: dimension must be 2 or 3");
  }
  cfg.validate();
  std::vector<double> vars(axes.size(), 0.0);
  return iterate_axis(f, axes, vars, 0, cfg);
}

}  // namespace kgsharp::quad
