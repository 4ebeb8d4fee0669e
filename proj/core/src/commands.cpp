#include "kgsharp/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "kgsharp/dimension_one.hpp"
#include "kgsharp/extremizers.hpp"
#include "kgsharp/functionals.hpp"
#include "kgsharp/hyperboloid.hpp"
#include "kgsharp/kernel.hpp"
#include "kgsharp/library.hpp"
#include "kgsharp/parallel.hpp"
#include "kgsharp/rng.hpp"

namespace kgsharp {

using quad::QuadratureConfig;

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string ds_tag(int d, double s) { return "d=" + std::to_string(d) + " s=" + num(s); }

struct Runner {
  const CommandOptions& opt;
  VerificationReport& rep;

  [[nodiscard]] QuadratureConfig cfg(double default_tol) const {
    QuadratureConfig c;
    c.rel_tol = opt.tol.value_or(default_tol);
    c.validate();
    return c;
  }

  [[nodiscard]] bool wants_dim(int d) const { return !opt.dim || *opt.dim == d; }
  [[nodiscard]] bool wants_mass(double s) const { return !opt.mass || std::abs(*opt.mass - s) < 1e-12; }

  // (d, s) pairs of a sweep after applying --dim and --mass.
  std::vector<std::pair<int, double>> sweep(const std::vector<std::pair<int, double>>& all) const {
    std::vector<std::pair<int, double>> out;
    for (const auto& [d, s] : all) {
      if (wants_dim(d) && wants_mass(s)) out.emplace_back(d, s);
    }
    if (out.empty()) throw UsageError(rep.command + ": no (d, s) combination matches --dim/--mass");
    return out;
  }

  [[nodiscard]] int points(int fallback) const {
    const int n = opt.points.value_or(fallback);
    if (n < 1) throw UsageError("--points must be >= 1");
    return n;
  }

  [[nodiscard]] std::vector<double> grid(std::vector<double> fallback, bool decreasing = false) const {
    std::vector<double> g = opt.a_grid.empty() ? std::move(fallback) : opt.a_grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 0.0)) throw UsageError("--a values must be > 0");
      if (decreasing && i > 0 && !(g[i] < g[i - 1])) throw UsageError("--a must be strictly decreasing for " + opt.command);
    }
    return g;
  }

  void fail(const std::string& name, const std::string& why, double runtime_ms = 0.0) {
    rep.add(name, std::nan(""), std::nan(""), false, runtime_ms, why);
  }

  // Runs body; an exception becomes a failed entry carrying its message.
  void guarded(const std::string& name, const std::function<void()>& body) {
    const auto t0 = Clock::now();
    try {
      body();
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      fail(name, e.what(), ms_since(t0));
    }
  }

  ReportEntry& check(const std::string& name, double computed, double reference, bool pass, double runtime_ms,
                     const std::string& note = {}) {
    return rep.add(name, computed, reference, pass, runtime_ms, note);
  }

  // Relative agreement with a converged-quadrature requirement.
  ReportEntry& agree(const std::string& name, double computed, double reference, double tol, double runtime_ms,
                     bool converged = true) {
    const bool close = relative_error(computed, reference) <= tol;
    std::string note;
    if (!converged) note = "quadrature did not converge";
    else if (!close) note = "relative error above " + num(tol);
    return rep.add(name, computed, reference, close && converged, runtime_ms, note);
  }
};

// Generator stream of one (d, s) combination.
CounterRng stream(std::uint64_t seed, int d, double s, std::uint64_t salt) {
  const auto sbits = static_cast<std::uint64_t>(std::llround(s * 8.0));
  return CounterRng(seed, (salt << 48) | (static_cast<std::uint64_t>(d) << 40) | (sbits << 32));
}

// (rho, tau) with rho in [0, 4] and tau at distance [0.5, 4] above the ++ support edge.
SpectralPoint interior_point(CounterRng& rng, double s) {
  const double rho = rng.uniform(0.0, 4.0);
  const double delta = rng.uniform(0.5, 4.0);
  return {rho, std::hypot(2.0 * s, rho) + delta};
}

RadialProfile inverse_phi(Mass s) {
  return RadialProfile{[s](double r) { return 1.0 / phi(s, r); }, 1.0, "1/phi"};
}

const std::vector<std::pair<int, double>> kPairingSweep = {{2, 1.0}, {2, 2.0}, {3, 0.0}, {3, 1.0}, {3, 2.0},
                                                           {5, 0.0}, {5, 1.0}, {5, 2.0}};

// ---------------------------------------------------------------- constants

double sphere_reference(int d) {
  switch (d) {
    case 1:
      return 2.0;
    case 2:
      return kTwoPi;
    case 3:
      return 4.0 * kPi;
    case 5:
      return 8.0 * kPi * kPi / 3.0;
    default:
      return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
  }
}

double kg_reference(int d) {
  switch (d) {
    case 1:
      return 1.0 / (2.0 * kPi * kPi);
    case 2:
      return std::pow(kTwoPi, -4) / std::numbers::sqrt2;
    case 3:
      return std::pow(kTwoPi, -7);
    case 5:
      return std::pow(kTwoPi, -10) / (24.0 * kPi * kPi);
    default:
      return std::pow(2.0, -0.5 * (d - 1)) * sphere_reference(d) / std::pow(kTwoPi, 3 * d - 1);
  }
}

void cmd_constants(Runner& run) {
  std::vector<int> dims;
  for (int d : {1, 2, 3, 5}) {
    if (run.wants_dim(d)) dims.push_back(d);
  }
  if (run.opt.dim && dims.empty()) dims.push_back(*run.opt.dim);
  for (int d : dims) {
    run.guarded("KG(" + std::to_string(d) + ")", [&] {
      const auto t0 = Clock::now();
      const Dimension dim(d);
      run.agree("|S^" + std::to_string(d - 1) + "|", sphere_measure(dim), sphere_reference(d), 1e-13, ms_since(t0));
      run.agree("KG(" + std::to_string(d) + ")", kg_constant(dim), kg_reference(d), 1e-13, ms_since(t0));
      switch (d) {
        case 1:
          run.agree("KG(1)/2 vs 1/(2pi)^2", 0.5 * kg_constant(dim), 1.0 / (kTwoPi * kTwoPi), 1e-13, ms_since(t0));
          break;
        case 2:
          run.agree("KG(2)/sqrt(2) vs 2^-5 pi^-4", kg_constant(dim) / std::numbers::sqrt2,
                    std::pow(2.0, -5) * std::pow(kPi, -4), 1e-13, ms_since(t0));
          run.agree("(KG(2)/sqrt(2))^(1/4) vs 1/(2^(5/4) pi)", std::pow(kg_constant(dim) / std::numbers::sqrt2, 0.25),
                    1.0 / (std::pow(2.0, 1.25) * kPi), 1e-13, ms_since(t0));
          break;
        case 3:
          run.agree("KG(3) vs (2pi)^-7", kg_constant(dim), std::pow(kTwoPi, -7), 1e-13, ms_since(t0));
          break;
        case 5:
          run.agree("(2pi)^10 KG(5) vs 1/(24 pi^2)", std::pow(kTwoPi, 10) * kg_constant(dim), 1.0 / (24.0 * kPi * kPi),
                    1e-13, ms_since(t0));
          break;
        default:
          break;
      }
    });
  }

  if (!run.wants_dim(5)) return;
  QuadratureConfig tight = run.cfg(1e-13);
  tight.abs_tol = 0.0;
  for (const auto& f : profile_library()) {
    const std::string name = "H1 vs (2pi)^5 ||phi_1 f||^2 [" + f.label + "]";
    run.guarded(name, [&] {
      const auto t0 = Clock::now();
      const double h1 = std::pow(hm_norm(f, Dimension(5), 1.0, tight), 2);
      const double phys = std::pow(kTwoPi, 5) * std::pow(l2_physical(Dimension(5), Mass(1.0), f, 1.0, tight), 2);
      run.agree(name, h1, phys, 1e-10, ms_since(t0));
    });
  }
}

// ------------------------------------------------------- verify-convolution

struct ConvolutionSample {
  SpectralPoint p;
  quad::QuadratureResult pairing;
  double closed = 0.0;
  double reduced = 0.0;  // pairing at the Lorentz-reduced point (0, sqrt(tau^2 - rho^2))
  MollifiedResult mollified;
  std::string error;
  double runtime_ms = 0.0;
};

void cmd_verify_convolution(Runner& run) {
  const int n = run.points(20);
  const QuadratureConfig cfg = run.cfg(1e-10);
  QuadratureConfig moll_cfg = cfg;
  moll_cfg.rel_tol = std::max(cfg.rel_tol, 1e-9);
  for (const auto& [d, s] : run.sweep(kPairingSweep)) {
    const Mass mass(s);
    const DeltaPairing P{Dimension(d), mass, SheetSigns::plus_plus(), inverse_phi(mass), inverse_phi(mass), {}};
    CounterRng rng = stream(run.opt.seed, d, s, 1);
    std::vector<SpectralPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(interior_point(rng, s));
    const auto samples = parallel_map<ConvolutionSample>(pts.size(), [&](std::size_t i) {
      ConvolutionSample out;
      out.p = pts[i];
      const auto t0 = Clock::now();
      try {
        out.pairing = delta_pairing_eval(P, out.p, cfg);
        out.closed = conv_closed_form(P.d, mass, out.p);
        const SpacetimePoint reduced = lorentz_reduce({{out.p.rho}, out.p.tau});
        out.reduced = delta_pairing_eval(P, {std::abs(reduced.xi[0]), reduced.tau}, cfg).value;
        out.mollified = mollified_delta_oracle(P, out.p, kDefaultMollifierWidths, moll_cfg);
      } catch (const std::exception& e) {
        out.error = e.what();
      }
      out.runtime_ms = ms_since(t0);
      return out;
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& r = samples[i];
      const std::string tag = ds_tag(d, s) + " #" + std::to_string(i) + " (rho=" + num(r.p.rho) +
                              ", tau=" + num(r.p.tau) + ")";
      if (!r.error.empty()) {
        run.fail("pairing " + tag, r.error, r.runtime_ms);
        continue;
      }
      run.agree("pairing vs closed form " + tag, r.pairing.value, r.closed, 1e-6, r.runtime_ms, r.pairing.converged);
      run.agree("Lorentz-reduced pairing " + tag, r.reduced, r.pairing.value, 1e-6, 0.0);
      auto& e = run.agree("mollified oracle " + tag, r.mollified.value, r.closed, 1e-3, 0.0);
      if (!r.mollified.monotone && e.note.empty()) e.note = "non-monotone across mollifier widths";
    }
  }
}

// ---------------------------------------------------------------- cs-weight

void cmd_cs_weight(Runner& run) {
  const int n = run.points(10);
  const QuadratureConfig cfg = run.cfg(1e-10);
  for (const auto& [d, s] : run.sweep(kPairingSweep)) {
    CounterRng rng = stream(run.opt.seed, d, s, 2);
    std::vector<SpectralPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(interior_point(rng, s));
    const double reference = cs_weight_constant(Dimension(d));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string name = "cs weight " + ds_tag(d, s) + " #" + std::to_string(i) + " (rho=" + num(pts[i].rho) +
                               ", tau=" + num(pts[i].tau) + ")";
      run.guarded(name, [&] {
        const auto t0 = Clock::now();
        const auto r = cs_weight_integral(Dimension(d), Mass(s), pts[i], cfg);
        run.agree(name, r.value, reference, 1e-6, ms_since(t0), r.converged);
      });
    }
  }
}

// ------------------------------------------------- verify-bilinear-equality

void cmd_bilinear_equality(Runner& run) {
  run.sweep({{5, 1.0}});
  const QuadratureConfig cfg = run.cfg(1e-8);
  for (double a : run.grid({0.5, 1.0, 2.0})) {
    const ExtremizerParam p{a, Mass(1.0), Dimension(5)};
    const std::string tag = " a=" + num(a);
    run.guarded("lhs vs rhs" + tag, [&] {
      const auto f = extremizer_profile(p);
      auto t0 = Clock::now();
      const auto lhs = bilinear_lhs(p.d, p.s, f, f, SheetSigns::plus_plus(), cfg);
      const double t_lhs = ms_since(t0);
      t0 = Clock::now();
      const auto rhs = bilinear_rhs(p.d, p.s, f, f, cfg);
      const double t_rhs = ms_since(t0);
      run.agree("lhs vs rhs" + tag, lhs.value, rhs.value, 1e-4, t_lhs + t_rhs, lhs.converged && rhs.converged);
      t0 = Clock::now();
      const auto closed = l4_fourth_power_closed(p, cfg);
      run.agree("pairing lhs vs closed-form lhs" + tag, lhs.value, closed.value, 1e-6, ms_since(t0), closed.converged);
    });
  }
}

// --------------------------------------------------------- bilinear-library

void cmd_bilinear_library(Runner& run) {
  const QuadratureConfig cfg = run.cfg(1e-6);
  const auto lib = profile_library();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < lib.size(); ++i) {
    pairs.emplace_back(i, i);
    pairs.emplace_back(i, (i + 1) % lib.size());
  }
  for (const auto& [d, s] : run.sweep(kPairingSweep)) {
    struct Outcome {
      quad::QuadratureResult lhs, rhs;
      std::string error;
      double runtime_ms = 0.0;
    };
    const auto outcomes = parallel_map<Outcome>(pairs.size(), [&](std::size_t k) {
      Outcome o;
      const auto t0 = Clock::now();
      const auto& f1 = lib[pairs[k].first];
      const auto& f2 = lib[pairs[k].second];
      try {
        o.lhs = bilinear_lhs(Dimension(d), Mass(s), f1, f2, SheetSigns::plus_plus(), cfg);
        o.rhs = bilinear_rhs(Dimension(d), Mass(s), f1, f2, cfg);
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      o.runtime_ms = ms_since(t0);
      return o;
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& o = outcomes[k];
      const std::string name =
          "lhs <= rhs " + ds_tag(d, s) + " [" + lib[pairs[k].first].label + " x " + lib[pairs[k].second].label + "]";
      if (!o.error.empty()) {
        run.fail(name, o.error, o.runtime_ms);
        continue;
      }
      const bool converged = o.lhs.converged && o.rhs.converged;
      const bool holds = o.lhs.value <= o.rhs.value + o.lhs.error_estimate + o.rhs.error_estimate;
      std::string note;
      if (!converged) note = "quadrature did not converge";
      else if (!holds) note = "lhs exceeds rhs beyond the combined error estimate";
      run.check(name, o.lhs.value, o.rhs.value, holds && converged, o.runtime_ms, note);
    }
  }
}

// ----------------------------------------------------------- quotient-sweep

void cmd_quotient_sweep(Runner& run) {
  run.sweep({{5, 1.0}});
  const QuadratureConfig cfg = run.cfg(1e-10);
  const double limit = 1.0 / (24.0 * kPi * kPi);
  const auto grid = run.grid({1.0, 0.3, 0.1, 0.03, 0.01}, true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = grid[i];
    const std::string name = "quotient a=" + num(a);
    run.guarded(name, [&] {
      const auto t0 = Clock::now();
      const auto q = quotient_closed({a, Mass(1.0), Dimension(5)}, cfg);
      const bool below = q.value < limit;
      const bool last = i + 1 == grid.size();
      const bool close = !last || relative_error(q.value, limit) <= 0.05;
      std::string note;
      if (!below) note = "quotient is not strictly below 1/(24 pi^2)";
      else if (!close) note = "final quotient is not within 5% of 1/(24 pi^2)";
      run.check(name, q.value, limit, below && close, ms_since(t0), note);
    });
  }
  run.guarded("two-path quotient a=1", [&] {
    const auto t0 = Clock::now();
    const ExtremizerParam p{1.0, Mass(1.0), Dimension(5)};
    const auto direct = strichartz_quotient(p.d, p.s, extremizer_profile(p), QuotientFlavor::NormS, cfg);
    const auto closed = quotient_closed(p, cfg);
    run.agree("two-path quotient a=1", direct.value, closed.value, 1e-6, ms_since(t0));
  });
}

// -------------------------------------------------------------- asymptotics

void cmd_asymptotics(Runner& run) {
  run.sweep({{5, 1.0}});
  const QuadratureConfig cfg = run.cfg(1e-10);
  const double limit = 0.75 * sphere_measure(Dimension(5));
  const ExtremizerParam p{1e-3, Mass(1.0), Dimension(5)};
  run.guarded("phi norm a=0.001", [&] {
    const auto t0 = Clock::now();
    const auto r = beta_norm_scaled(p, 1.0, cfg);
    run.agree("a^5 (2pi)^5 ||phi f_a||^2 at a=0.001 vs (3/4)|S^4|", r.value, limit, 5e-3, ms_since(t0), r.converged);
  });
  run.guarded("half norm a=0.001", [&] {
    const auto t0 = Clock::now();
    const auto r = beta_norm_scaled(p, 0.5, cfg);
    const double bound = 0.05 * limit;
    run.check("a^5 (2pi)^5 ||phi^(1/2) f_a||^2 at a=0.001 <= 0.05 (3/4)|S^4|", r.value, bound,
              r.value <= bound && r.converged, ms_since(t0), r.value <= bound ? "" : "above 5% of (3/4)|S^4|");
  });
  run.guarded("phi norm series", [&] {
    const auto t0 = Clock::now();
    const auto grid = run.grid({1.0, 0.1, 0.01, 0.001}, true);
    double prev_gap = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    double last = 0.0;
    for (double a : grid) {
      last = beta_norm_scaled({a, Mass(1.0), Dimension(5)}, 1.0, cfg).value;
      const double gap = std::abs(last - limit);
      decreasing = decreasing && gap < prev_gap;
      prev_gap = gap;
    }
    run.check("phi norm series approaches (3/4)|S^4| monotonically", last, limit, decreasing, ms_since(t0),
              decreasing ? "" : "distance to the limit is not decreasing");
  });
}

// ------------------------------------------------------------------- claim1

void cmd_claim1(Runner& run) {
  run.sweep({{5, 1.0}});
  const QuadratureConfig cfg = run.cfg(1e-10);
  const Mass s(1.0);
  for (auto [j, k] : std::vector<std::pair<int, int>>{{2, 0}, {0, 2}, {1, 1}, {0, 0}, {1, 0}, {0, 1}}) {
    const std::string name = "a^10 I_{" + std::to_string(j) + "," + std::to_string(k) + "} at a=0.001";
    run.guarded(name, [&] {
      const auto t0 = Clock::now();
      const auto r = ijk_integral(MomentKind::I, j, k, 1e-3, s, cfg);
      const double lim = ijk_limit(j, k);
      if (lim != 0.0) {
        run.agree(name, r.value, lim, 1e-2, ms_since(t0), r.converged);
      } else {
        const bool ok = std::abs(r.value) <= 1e-3 && r.converged;
        run.check(name, r.value, 0.0, ok, ms_since(t0), ok ? "" : "not within 1e-3 of the zero limit");
      }
    });
  }

  const auto grid = run.grid({1.0, 0.3, 0.1, 0.03}, true);
  for (auto [j, k] : std::vector<std::pair<int, int>>{{0, 2}, {1, 1}, {2, 0}}) {
    const std::string tag = "(" + std::to_string(j) + "," + std::to_string(k) + ")";
    run.guarded("recursion gap " + tag, [&] {
      const auto t0 = Clock::now();
      const auto rep = claim1_check(j, k, grid, s, cfg);
      const auto& gap = rep.at("gap");
      const auto& rem = rep.at("remainder");
      bool decreasing = true;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        run.agree("recursion gap " + tag + " a=" + num(grid[i]) + " vs exact remainder", gap.values[i],
                  -rem.values[i], 1e-6, 0.0);
        if (i > 0) decreasing = decreasing && std::abs(gap.values[i]) < std::abs(gap.values[i - 1]);
      }
      run.check("recursion gap " + tag + " decreasing along a-grid", std::abs(gap.values.back()),
                std::abs(gap.values.front()), decreasing, ms_since(t0), decreasing ? "" : "gap is not decreasing");
    });
  }

  for (int j = 1; j <= 3; ++j) {
    const std::string name = "a^10 II_{" + std::to_string(j) + ",-1} decreasing along a-grid";
    run.guarded(name, [&] {
      const auto t0 = Clock::now();
      std::vector<double> values;
      bool decreasing = true;
      for (double a : grid) {
        values.push_back(ijk_integral(MomentKind::II, j, -1, a, s, cfg).value);
        if (values.size() > 1) decreasing = decreasing && values.back() < values[values.size() - 2];
      }
      run.check(name, values.back(), values.front(), decreasing, ms_since(t0), decreasing ? "" : "not decreasing");
    });
  }
}

// ----------------------------------------------------------------- assembly

void cmd_assembly(Runner& run) {
  run.sweep({{5, 1.0}});
  const QuadratureConfig cfg = run.cfg(1e-10);
  for (double a : run.grid({1.0, 0.3})) {
    const std::string name = "assembled expansion vs closed L4 a=" + num(a);
    run.guarded(name, [&] {
      const auto t0 = Clock::now();
      const auto assembled = expansion_assembly_scaled(a, Mass(1.0), cfg);
      const auto closed = l4_fourth_power_scaled({a, Mass(1.0), Dimension(5)}, cfg);
      run.agree(name, assembled.value, closed.value, 1e-6, ms_since(t0), assembled.converged && closed.converged);
    });
  }
}

// ------------------------------------------------------------ concentration

void cmd_concentration(Runner& run) {
  run.sweep({{5, 1.0}});
  const QuadratureConfig cfg = run.cfg(1e-8);
  const auto grid = run.grid({0.3, 0.1, 0.03, 0.01}, true);
  std::vector<ConcentrationDiagnostics> diag;
  for (double a : grid) {
    const std::string tag = " a=" + num(a);
    const auto t0 = Clock::now();
    try {
      const auto g = normalized_g({a, Mass(1.0), Dimension(5)}, cfg);
      const auto c = concentration_diagnostics(g, Dimension(5), Mass(1.0), 1.0, cfg);
      const double t_diag = ms_since(t0);
      const bool first = diag.empty();
      const bool half_down = first || c.half_norm < diag.back().half_norm;
      const bool ball_down = first || c.ball_mass < diag.back().ball_mass;
      run.check("half_norm" + tag, c.half_norm, first ? c.half_norm : diag.back().half_norm, half_down, t_diag,
                half_down ? "" : "not strictly below the previous value");
      run.check("ball_mass R=1" + tag, c.ball_mass, first ? c.ball_mass : diag.back().ball_mass, ball_down, 0.0,
                ball_down ? "" : "not strictly below the previous value");
      run.check("jn >= -1e-10" + tag, c.jn, 0.0, c.jn >= -1e-10, 0.0, c.jn >= -1e-10 ? "" : "negative");
      run.check("carneiro >= -1e-10" + tag, c.carneiro, 0.0, c.carneiro >= -1e-10, 0.0,
                c.carneiro >= -1e-10 ? "" : "negative");
      const auto t1 = Clock::now();
      const auto direct = jn_direct(g, Mass(1.0), cfg);
      run.agree("jn on-support vs direct" + tag, c.jn, direct.value, 1e-6, ms_since(t1), direct.converged);
      diag.push_back(c);
    } catch (const std::exception& e) {
      run.fail("concentration" + tag, e.what(), ms_since(t0));
      return;
    }
  }
  const auto& last = diag.back();
  run.check("final half_norm < 0.1", last.half_norm, 0.1, last.half_norm < 0.1, 0.0,
            last.half_norm < 0.1 ? "" : "not below 0.1");
  run.check("final ball_mass < 0.1", last.ball_mass, 0.1, last.ball_mass < 0.1, 0.0,
            last.ball_mass < 0.1 ? "" : "not below 0.1");
}

// -------------------------------------------------------------- d1-identity

struct LinePair {
  double s;
  LineProfile f1;
  LineProfile f2;
  std::string label;
};

std::vector<LinePair> line_pairs() {
  const auto a = LineProfile::indicator({1.0, 2.0});
  const auto b = LineProfile::indicator({-2.0, -1.0});
  const auto c = LineProfile::indicator({3.0, 4.0});
  LineProfile wave{[](double y) { return std::exp(-0.5 * y) * std::complex<double>(1.0, 0.3 * y); },
                   {{0.5, 1.0}, {2.0, 2.5}},
                   "e^{-y/2}(1+0.3iy) on [0.5,1]u[2,2.5]"};
  LineProfile bump{[](double y) { return std::complex<double>((y + 1.5) * (0.2 - y) + 0.1, 0.0); },
                   {{-1.5, -0.2}},
                   "quadratic on [-1.5,-0.2]"};
  return {{1.0, a, b, "chi[1,2] x chi[-2,-1]"},
          {0.5, a, b, "chi[1,2] x chi[-2,-1]"},
          {2.0, a, b, "chi[1,2] x chi[-2,-1]"},
          {0.0, a, b, "chi[1,2] x chi[-2,-1]"},
          {1.0, a, c, "chi[1,2] x chi[3,4]"},
          {1.0, wave, bump, wave.label + " x " + bump.label}};
}

// Samples (y1, y2) with y1 != y2 uniformly in [-10, 10]^2.
std::pair<double, double> line_sample(CounterRng& rng) {
  for (;;) {
    const double y1 = rng.uniform(-10.0, 10.0);
    const double y2 = rng.uniform(-10.0, 10.0);
    if (y1 != y2) return {y1, y2};
  }
}

void pointwise_line_bound(Runner& run, int samples) {
  const std::string name = "pointwise d=1 bound violations over " + std::to_string(samples) + " samples";
  run.guarded(name, [&] {
    const auto t0 = Clock::now();
    CounterRng rng = stream(run.opt.seed, 1, 1.0, 3);
    long violations = 0;
    long poly_violations = 0;
    for (int i = 0; i < samples; ++i) {
      const auto [y1, y2] = line_sample(rng);
      const auto kb = kernel_bound(Dimension(1), Mass(1.0), {std::abs(y1), std::abs(y2), y1 * y2 < 0 ? -1.0 : 1.0});
      if (kb.value > kb.bound * (1.0 + 1e-12)) ++violations;
      const double d4 = std::pow(y1 - y2, 4);
      if ((y1 * y1 + y2 * y2) * d4 + y1 * y1 * y2 * y2 * d4 < 0.0) ++poly_violations;
    }
    run.check(name, static_cast<double>(violations), 0.0, violations == 0, ms_since(t0));
    run.check("polynomial form violations over " + std::to_string(samples) + " samples",
              static_cast<double>(poly_violations), 0.0, poly_violations == 0, 0.0);
  });
}

void cmd_d1_identity(Runner& run) {
  run.sweep({{1, 0.0}, {1, 0.5}, {1, 1.0}, {1, 2.0}});
  const QuadratureConfig cfg = run.cfg(1e-10);
  for (const auto& pair : line_pairs()) {
    if (!run.wants_mass(pair.s)) continue;
    const std::string tag = " s=" + num(pair.s) + " [" + pair.label + "]";
    run.guarded("identity" + tag, [&] {
      const Mass s(pair.s);
      auto t0 = Clock::now();
      const auto rhs = identity_rhs(s, pair.f1, pair.f2, cfg);
      const auto lhs = identity_lhs(s, pair.f1, pair.f2, cfg, LhsPath::Jacobian);
      run.agree("identity lhs vs rhs" + tag, lhs.value, rhs.value, 1e-5, ms_since(t0),
                lhs.converged && rhs.converged);
      t0 = Clock::now();
      const auto inj = check_injectivity(s, pair.f1, pair.f2);
      if (inj.injective) {
        const auto uv = identity_lhs(s, pair.f1, pair.f2, cfg, LhsPath::UV);
        run.agree("identity (u,v)-path lhs vs rhs" + tag, uv.value, rhs.value, 1e-5, ms_since(t0), uv.converged);
      } else {
        run.fail("identity (u,v)-path lhs vs rhs" + tag,
                 "(u, v) map not injective, overlap " + num(inj.worst_overlap) + " at u=" + num(inj.u_at_worst),
                 ms_since(t0));
      }
    });
  }
  if (run.wants_mass(1.0)) {
    const auto pairs = line_pairs();
    run.guarded("Ozawa-Rogers bound", [&] {
      const auto t0 = Clock::now();
      const auto b = ozawa_rogers_bound(pairs[0].f1, pairs[0].f2, cfg);
      const bool slack = b.rhs - b.lhs > 0.0;
      run.check("Ozawa-Rogers lhs < rhs [" + pairs[0].label + "]", b.lhs, b.rhs, slack, ms_since(t0),
                slack ? "" : "no positive slack");
    });
    pointwise_line_bound(run, run.points(100000));
  }
}

// ------------------------------------------------------------- bounds-sample

void cmd_bounds_sample(Runner& run) {
  const int n = run.points(100000);
  for (const auto& [d, s] : run.sweep({{1, 1.0}, {2, 1.0}, {3, 1.0}})) {
    const std::string name = "kernel bound violations " + ds_tag(d, s);
    run.guarded(name, [&] {
      const auto t0 = Clock::now();
      CounterRng rng = stream(run.opt.seed, d, s, 4);
      long violations = 0;
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        KernelBound kb;
        if (d == 1) {
          const auto [y1, y2] = line_sample(rng);
          kb = kernel_bound(Dimension(1), Mass(s), {std::abs(y1), std::abs(y2), y1 * y2 < 0 ? -1.0 : 1.0});
        } else {
          const double r1 = rng.uniform(0.0, 10.0);
          const double r2 = rng.uniform(0.0, 10.0);
          const double c = rng.uniform(-1.0, 1.0);
          kb = kernel_bound(Dimension(d), Mass(s), {r1, r2, c});
        }
        worst = std::max(worst, kb.value / kb.bound);
        if (kb.value > kb.bound * (1.0 + 1e-12)) ++violations;
      }
      auto& e = run.check(name, static_cast<double>(violations), 0.0, violations == 0, ms_since(t0));
      e.note = "largest value/bound " + num(worst);
    });
  }

  if (!run.wants_dim(1)) return;
  run.guarded("d=1 scaling", [&] {
    const auto t0 = Clock::now();
    CounterRng rng = stream(run.opt.seed, 1, 0.0, 5);
    double worst_scaling = 0.0;
    double worst_square = 0.0;
    double worst_weight = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = rng.uniform(0.1, 10.0);
      const auto [y1, y2] = line_sample(rng);
      const double k_s = line_kernel(Mass(s), s * y1, s * y2);
      const double k_1 = line_kernel(Mass(1.0), y1, y2);
      worst_scaling = std::max(worst_scaling, relative_error(k_s, k_1 / (s * s)));
      const double r1 = std::abs(y1);
      const double r2 = std::abs(y2);
      const double p1 = phi(Mass(s), r1);
      const double p2 = phi(Mass(s), r2);
      worst_square = std::max(worst_square, s * s + r1 * r2 - p1 * p2);
      const double weight = std::pow(p1 * y2 - p2 * y1, 2);
      const double expanded = s * s * (y1 * y1 + y2 * y2) + 2.0 * y1 * y1 * y2 * y2 - 2.0 * y1 * y2 * p1 * p2;
      worst_weight = std::max(worst_weight, std::abs(weight - expanded) / std::max(1.0, std::abs(expanded)));
    }
    const double elapsed = ms_since(t0);
    run.check("max rel |K_s(s y) - K_1(y)/s^2|", worst_scaling, 0.0, worst_scaling <= 1e-10, elapsed);
    run.check("max (s^2 + r1 r2 - phi phi')", worst_square, 0.0, worst_square <= 1e-9, 0.0);
    run.check("max |(phi y2 - phi' y1)^2 - expanded weight| (scaled)", worst_weight, 0.0, worst_weight <= 1e-9, 0.0);
  });
}

// ------------------------------------------------------------- full-solution

struct NamedData {
  std::string label;
  CauchyData data;
};

std::vector<NamedData> cauchy_library() {
  auto gauss = RadialProfile{[](double r) { return std::exp(-r * r); }, 0.7, "exp(-r^2)"};
  auto expo = RadialProfile{[](double r) { return std::exp(-r); }, 1.0, "exp(-r)"};
  auto small_gauss = RadialProfile{[](double r) { return 0.5 * std::exp(-2.0 * r * r); }, 0.5, "0.5 exp(-2r^2)"};
  auto ext = RadialProfile{[](double r) { return std::exp(-phi(Mass(1.0), r)) / phi(Mass(1.0), r); }, 1.0,
                           "exp(-phi_1)/phi_1"};
  auto rexp = RadialProfile{[](double r) { return r * std::exp(-r); }, 1.0, "r exp(-r)"};
  auto zero = zero_profile();
  return {{"u0=exp(-r^2), u1=0", {gauss, zero}},
          {"u0=exp(-r), u1=0.5 exp(-2r^2)", {expo, small_gauss}},
          {"u0=exp(-phi_1)/phi_1, u1=r exp(-r)", {ext, rexp}}};
}

void cmd_full_solution(Runner& run) {
  run.sweep({{5, 1.0}});
  const QuadratureConfig cfg = run.cfg(1e-8);
  QuadratureConfig tight = cfg;
  tight.rel_tol = std::min(cfg.rel_tol, 1e-13);
  tight.abs_tol = 0.0;
  const Dimension d(5);
  const double energy_const = 1.0 / (64.0 * kPi * kPi);
  for (const auto& [label, data] : cauchy_library()) {
    const std::string tag = " [" + label + "]";
    run.guarded("full solution" + tag, [&] {
      auto t0 = Clock::now();
      const auto r = full_solution_l4(data, cfg);
      const double t_l4 = ms_since(t0);
      const double h1_phys = std::pow(hm_norm(data.u0, d, 1.0, tight), 2) * std::pow(kTwoPi, -5);
      const double u1_phys = std::pow(l2_physical(d, Mass(1.0), data.u1, 0.0, tight), 2);
      const double bound = energy_const * std::pow(h1_phys + u1_phys, 2);
      const bool energy_ok = r.l4_fourth + r.error_estimate < bound;
      run.check("||u||^4 < (1/(8pi))^2 (||u0||_H1^2 + ||u1||^2)^2" + tag, r.l4_fourth, bound, energy_ok, t_l4,
                energy_ok ? "" : "no positive slack");
      const auto poly = poly_sharp(r.x, r.y);
      const bool poly_ok = r.l4_fourth <= poly.rhs + r.error_estimate;
      run.check("||u||^4 <= (3/2)(X + Y)^2" + tag, r.l4_fourth, poly.rhs, poly_ok, 0.0,
                poly_ok ? "" : "exceeds the polynomial bound");
      t0 = Clock::now();
      const auto [fp, fm] = split_cauchy_data(data);
      const auto mirrored = bilinear_lhs(d, Mass(1.0), fm, fm, SheetSigns::plus_plus(), cfg);
      run.agree("(--) term vs (++) term of f-" + tag, r.minus_minus, mirrored.value, 1e-6, ms_since(t0),
                mirrored.converged);

      t0 = Clock::now();
      const auto u1_over_phi =
          RadialProfile{[u1 = data.u1](double x) { return u1(x) / phi(Mass(1.0), x); }, data.u1.decay_scale,
                        "u1/phi", data.u1.support_max};
      const double left = std::pow(hm_norm(fp, d, 1.0, tight), 2) + std::pow(hm_norm(fm, d, 1.0, tight), 2);
      const double right =
          0.5 * std::pow(hm_norm(data.u0, d, 1.0, tight), 2) + 0.5 * std::pow(hm_norm(u1_over_phi, d, 1.0, tight), 2);
      run.agree("parallelogram law" + tag, left, right, 1e-10, ms_since(t0));
    });
  }
  run.guarded("poly_sharp equality", [&] {
    const auto t0 = Clock::now();
    bool exact = true;
    bool strict_off_diagonal = true;
    for (double x : {0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 10.0}) {
      exact = exact && poly_sharp(x, x).lhs == poly_sharp(x, x).rhs;
      for (double y : {0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 10.0}) {
        if (x != y) strict_off_diagonal = strict_off_diagonal && poly_sharp(x, y).lhs < poly_sharp(x, y).rhs;
      }
    }
    const auto p = poly_sharp(1.0, 1.0);
    run.check("poly_sharp equality exactly at X=Y", p.lhs, p.rhs, exact, ms_since(t0),
              exact ? "" : "lhs != rhs on the diagonal");
    run.check("poly_sharp strict off the diagonal", poly_sharp(2.0, 3.0).lhs, poly_sharp(2.0, 3.0).rhs,
              strict_off_diagonal, 0.0, strict_off_diagonal ? "" : "equality off the diagonal");
  });
}

// ----------------------------------------------------------------- registry

using Handler = void (*)(Runner&);

const std::vector<std::pair<std::string, Handler>>& registry() {
  static const std::vector<std::pair<std::string, Handler>> table = {
      {"constants", cmd_constants},
      {"verify-convolution", cmd_verify_convolution},
      {"cs-weight", cmd_cs_weight},
      {"verify-bilinear-equality", cmd_bilinear_equality},
      {"bilinear-library", cmd_bilinear_library},
      {"quotient-sweep", cmd_quotient_sweep},
      {"asymptotics", cmd_asymptotics},
      {"claim1", cmd_claim1},
      {"assembly", cmd_assembly},
      {"concentration", cmd_concentration},
      {"d1-identity", cmd_d1_identity},
      {"bounds-sample", cmd_bounds_sample},
      {"full-solution", cmd_full_solution},
  };
  return table;
}

void record_params(const CommandOptions& opt, VerificationReport& rep) {
  if (opt.dim) rep.params.emplace_back("dim", std::to_string(*opt.dim));
  if (opt.mass) rep.params.emplace_back("mass", num(*opt.mass));
  if (opt.tol) rep.params.emplace_back("tol", num(*opt.tol));
  rep.params.emplace_back("seed", std::to_string(opt.seed));
  if (opt.points) rep.params.emplace_back("points", std::to_string(*opt.points));
  if (!opt.a_grid.empty()) {
    std::string g;
    for (double a : opt.a_grid) g += (g.empty() ? "" : ",") + num(a);
    rep.params.emplace_back("a", g);
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : registry()) out.push_back(name);
    out.emplace_back("all");
    return out;
  }();
  return names;
}

VerificationReport run_command(const CommandOptions& options) {
  if (options.dim && *options.dim < 1) throw UsageError("--dim must be >= 1");
  if (options.mass && !(*options.mass >= 0.0)) throw UsageError("--mass must be >= 0");
  if (options.tol && !(*options.tol > 0.0 && *options.tol < 1.0)) throw UsageError("--tol must be in (0, 1)");

  VerificationReport rep;
  rep.command = options.command;
  record_params(options, rep);

  if (options.command == "all") {
    if (options.dim || options.mass || options.points || !options.a_grid.empty()) {
      throw UsageError("all: --dim, --mass, --points and --a are not accepted");
    }
    for (const auto& [name, handler] : registry()) {
      VerificationReport sub;
      sub.command = name;
      CommandOptions sub_opt = options;
      sub_opt.command = name;
      Runner run{sub_opt, sub};
      handler(run);
      rep.merge(sub);
    }
    return rep;
  }

  for (const auto& [name, handler] : registry()) {
    if (name == options.command) {
      Runner run{options, rep};
      handler(run);
      return rep;
    }
  }
  throw UsageError("unknown command: " + options.command);
}

}  // namespace kgsharp
