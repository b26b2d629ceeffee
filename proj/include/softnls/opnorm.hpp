#pragma once
//
// Operator norm ||T|| = sup_{v != 0} ||T v|| / ||v|| = sup_{||v|| = 1} ||T v||.
//
// Two estimators, both lower bounds of the supremum:
//
//  * grid: every direction of a latitude/longitude grid on the Euclidean unit
//    sphere of the lift (lifted dimension 2 or 3), rescaled onto the unit
//    sphere of norm_in. The parameter axis is the polar axis and the
//    equator e = 0 is always sampled, so both poles and the whole equator
//    ring are on the grid. Only the e >= 0 hemisphere is scanned since
//    ||T(-v)|| / ||-v|| = ||T v|| / ||v|| for norms.
//
//  * multistart: derivative-free ascent on the norm_in unit sphere. Each
//    iteration tries +-step along every lifted axis plus one random
//    direction, renormalizes, and moves to the best improvement; otherwise
//    the step shrinks geometrically until it reaches the floor. Starts are
//    the best points of a pool (lifted axes and a coarse grid) plus random
//    directions. The estimate never decreases when starts or iterations
//    grow.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "softnls/error.hpp"
#include "softnls/norms.hpp"
#include "softnls/operator.hpp"
#include "softnls/random.hpp"

namespace softnls {

enum class OpNormMethod { grid, multistart };

inline const char* to_string(OpNormMethod m) { return m == OpNormMethod::grid ? "grid" : "multistart"; }

struct OpNormConfig {
  OpNormMethod method = OpNormMethod::multistart;
  double grid_resolution = 1e-3;       // angular step of the grid method and oracle
  double seed_grid_resolution = 0.25;  // angular step of the multistart seed pool
  unsigned starts = 16;
  unsigned iterations = 200;  // per start
  double initial_step = 0.1;
  double step_decay = 0.5;
  double step_floor = 1e-7;
  std::uint64_t seed = 0;
  bool with_oracle = false;  // multistart only: also run the grid, report the gap

  void validate() const {
    detail::require(grid_resolution > 0.0 && grid_resolution <= 1.0, "grid resolution must lie in (0, 1]");
    detail::require(seed_grid_resolution > 0.0 && seed_grid_resolution <= 1.0,
                    "seed grid resolution must lie in (0, 1]");
    detail::require(starts >= 1, "need at least one start");
    detail::require(iterations >= 1, "need at least one iteration");
    detail::require(initial_step > 0.0 && std::isfinite(initial_step), "initial step must be positive");
    detail::require(step_decay > 0.0 && step_decay < 1.0, "step decay must lie in (0, 1)");
    detail::require(step_floor > 0.0 && step_floor <= initial_step, "step floor must lie in (0, initial_step]");
  }
};

struct OpNormResult {
  double value = 0.0;
  SoftVector maximizer = SoftVector::zero(1);  // unit vector of norm_in
  OpNormMethod method = OpNormMethod::multistart;
  std::uint64_t iterations = 0;
  std::optional<double> certificate_gap;  // oracle - estimate
};

inline constexpr std::size_t kMaxGridLiftedDim = 3;

namespace detail {

inline constexpr double kTieTol = 1e-12;

// ||T v|| / ||v|| with reusable buffers; -inf where norm_in vanishes.
class RatioObjective {
 public:
  RatioObjective(const SoftLinearOperator& t, const SoftNorm& nin, const SoftNorm& nout)
      : t_(t), nin_(nin), nout_(nout), point_(SoftVector::zero(t.in_dim())), image_(SoftVector::zero(t.out_dim())) {}

  [[nodiscard]] std::size_t lifted_dim() const { return t_.in_dim() + 1; }

  /// Evaluates at the direction `lifted` (any scale) and leaves the norm_in
  /// normalized point in unit().
  double operator()(std::span<const double> lifted) {
    auto& x = SoftVectorAccess::x(point_);
    for (std::size_t i = 0; i + 1 < lifted.size(); ++i) x[i] = lifted[i];
    SoftVectorAccess::e(point_) = lifted.back();
    const double d = nin_(point_);
    if (!(d > 0.0) || !std::isfinite(d)) return -std::numeric_limits<double>::infinity();
    for (auto& v : x) v /= d;
    SoftVectorAccess::e(point_) /= d;
    ++evaluations_;
    op_apply_into(t_, point_, image_);
    return nout_(image_);
  }

  [[nodiscard]] const SoftVector& unit() const noexcept { return point_; }
  [[nodiscard]] std::uint64_t evaluations() const noexcept { return evaluations_; }

 private:
  const SoftLinearOperator& t_;
  const SoftNorm& nin_;
  const SoftNorm& nout_;
  SoftVector point_;
  SoftVector image_;
  std::uint64_t evaluations_ = 0;
};

// Best value with the lexicographically smallest maximizer among ties; the
// maximizer's own ratio stays within kTieTol of the best value.
struct Incumbent {
  double value = -std::numeric_limits<double>::infinity();
  double point_value = -std::numeric_limits<double>::infinity();
  std::optional<SoftVector> point;

  void offer(double v, const SoftVector& p) {
    if (!(v > -std::numeric_limits<double>::infinity())) return;
    const double top = point ? std::max(value, v) : v;
    const double tol = kTieTol * std::max(1.0, std::abs(top));
    value = top;
    if (v < top - tol) return;
    if (!point || point_value < top - tol || lifted_less(p, *point)) {
      point = p;
      point_value = v;
    }
  }
};

// Visits every direction of the hemisphere grid (lifted dims 2 and 3).
template <class Visit>
void for_each_grid_direction(std::size_t lifted_dim, double resolution, Visit&& visit) {
  require(lifted_dim >= 2 && lifted_dim <= kMaxGridLiftedDim, "grid requires lifted dimension 2 or 3");
  constexpr double pi = std::numbers::pi;
  if (lifted_dim == 2) {
    // Angle from +x over [0, pi], even step count so e-pole is included.
    auto n = static_cast<std::size_t>(std::ceil(pi / resolution));
    n += n % 2;
    for (std::size_t j = 0; j <= n; ++j) {
      const double phi = pi * static_cast<double>(j) / static_cast<double>(n);
      const double dir[2] = {j == n / 2 ? 0.0 : std::cos(phi), std::sin(phi)};
      visit(std::span<const double>(dir, 2));
    }
    return;
  }
  const auto rings = static_cast<std::size_t>(std::ceil((pi / 2.0) / resolution));
  for (std::size_t i = 0; i <= rings; ++i) {
    const double theta = (pi / 2.0) * static_cast<double>(i) / static_cast<double>(rings);
    const double s = i == rings ? 1.0 : std::sin(theta);
    const double c = i == rings ? 0.0 : std::cos(theta);
    const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * pi * s / resolution)));
    for (std::size_t j = 0; j < count; ++j) {
      const double phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(count);
      const double dir[3] = {s * std::cos(phi), s * std::sin(phi), c};
      visit(std::span<const double>(dir, 3));
    }
  }
}

inline void require_opnorm_args(const SoftLinearOperator& t, const SoftNorm& nin, const SoftNorm& nout) {
  require(nin.dim() == t.in_dim(), "op_norm: norm_in dimension must equal operator in_dim");
  require(nout.dim() == t.out_dim(), "op_norm: norm_out dimension must equal operator out_dim");
}

inline OpNormResult finish(const SoftLinearOperator& t, const SoftNorm& nin, const SoftNorm& nout,
                           const Incumbent& best, OpNormMethod method, std::uint64_t iterations) {
  require(best.point.has_value(), "op_norm: norm_in vanished on every probe");
  const SoftVector& p = *best.point;
  const double d = nin(p);
  OpNormResult res{};
  res.maximizer = d == 1.0 ? p : sv_scale(1.0 / d, p);
  // The largest evaluated ratio, so the value is monotone in the probe set;
  // the maximizer may be a tie within kTieTol of it.
  res.value = std::max(best.value, nout(op_apply(t, res.maximizer)));
  res.method = method;
  res.iterations = iterations;
  return res;
}

}  // namespace detail

/// Grid estimate; every grid point counts as one iteration.
inline OpNormResult op_norm_grid(const SoftLinearOperator& t, const SoftNorm& nin, const SoftNorm& nout,
                                 double resolution) {
  detail::require_opnorm_args(t, nin, nout);
  detail::require(resolution > 0.0 && resolution <= 1.0, "grid resolution must lie in (0, 1]");
  detail::RatioObjective f(t, nin, nout);
  detail::Incumbent best;
  detail::for_each_grid_direction(f.lifted_dim(), resolution,
                                  [&](std::span<const double> dir) { best.offer(f(dir), f.unit()); });
  return detail::finish(t, nin, nout, best, OpNormMethod::grid, f.evaluations());
}

namespace detail {

inline OpNormResult op_norm_multistart(const SoftLinearOperator& t, const SoftNorm& nin, const SoftNorm& nout,
                                       const OpNormConfig& cfg, std::span<const SoftVector> extra_seeds) {
  RatioObjective f(t, nin, nout);
  const std::size_t d = f.lifted_dim();
  Incumbent best;

  struct Seed {
    double value;
    std::vector<double> lifted;
  };
  std::vector<Seed> pool;
  auto add_seed = [&](std::span<const double> dir) {
    const double v = f(dir);
    if (!std::isfinite(v)) return;
    best.offer(v, f.unit());
    const auto& u = f.unit();
    std::vector<double> lifted(d);
    for (std::size_t i = 0; i < d; ++i) lifted[i] = u.lifted(i);
    pool.push_back({v, std::move(lifted)});
  };

  std::vector<double> axis(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (double sgn : {1.0, -1.0}) {
      std::fill(axis.begin(), axis.end(), 0.0);
      axis[i] = sgn;
      add_seed(axis);
    }
  }
  if (d <= kMaxGridLiftedDim) for_each_grid_direction(d, cfg.seed_grid_resolution, add_seed);
  for (const auto& s : extra_seeds) {
    require(s.dim() + 1 == d, "op_norm: extra seed has wrong dimension");
    std::vector<double> lifted(d);
    for (std::size_t i = 0; i < d; ++i) lifted[i] = s.lifted(i);
    add_seed(lifted);
  }
  std::stable_sort(pool.begin(), pool.end(), [](const Seed& a, const Seed& b) {
    if (a.value != b.value) return a.value > b.value;
    return std::lexicographical_compare(a.lifted.begin(), a.lifted.end(), b.lifted.begin(), b.lifted.end());
  });

  const std::size_t pooled = std::min<std::size_t>(pool.size(), (cfg.starts + 1) / 2);
  std::uint64_t iterations = 0;
  std::vector<double> cur(d), cand(d), best_cand(d);

  auto climb = [&](std::vector<double> start, Engine& g) {
    double fv = f(start);
    if (!std::isfinite(fv)) return;
    for (std::size_t i = 0; i < d; ++i) cur[i] = f.unit().lifted(i);
    best.offer(fv, f.unit());
    std::normal_distribution<double> nd(0.0, 1.0);
    double step = cfg.initial_step;
    for (unsigned it = 0; it < cfg.iterations && step >= cfg.step_floor; ++it) {
      ++iterations;
      double round_best = -std::numeric_limits<double>::infinity();
      auto propose = [&](std::span<const double> delta) {
        for (std::size_t i = 0; i < d; ++i) cand[i] = cur[i] + step * delta[i];
        const double v = f(cand);
        if (v > round_best) {
          round_best = v;
          for (std::size_t i = 0; i < d; ++i) best_cand[i] = f.unit().lifted(i);
        }
        best.offer(v, f.unit());
      };
      for (std::size_t i = 0; i < d; ++i) {
        for (double sgn : {1.0, -1.0}) {
          std::fill(axis.begin(), axis.end(), 0.0);
          axis[i] = sgn;
          propose(axis);
        }
      }
      std::vector<double> rnd(d);
      double len = 0.0;
      for (auto& r : rnd) {
        r = nd(g);
        len += r * r;
      }
      len = std::sqrt(len);
      if (len > 0.0) {
        for (auto& r : rnd) r /= len;
        propose(rnd);
      }
      if (round_best > fv) {
        fv = round_best;
        cur = best_cand;
      } else {
        step *= cfg.step_decay;
      }
    }
  };

  for (std::size_t s = 0; s < pooled; ++s) {
    auto g = substream(cfg.seed, "opnorm_pool_walk", s);
    climb(pool[s].lifted, g);
  }
  std::normal_distribution<double> nd(0.0, 1.0);
  for (std::size_t r = 0; r + pooled < cfg.starts; ++r) {
    auto g = substream(cfg.seed, "opnorm_random_start", r);
    std::vector<double> start(d);
    for (auto& v : start) v = nd(g);
    climb(std::move(start), g);
  }
  return finish(t, nin, nout, best, OpNormMethod::multistart, iterations);
}

}  // namespace detail

/// Estimates ||T|| from norm_in to norm_out. Both must be norms (N1-N3); the
/// canonical norms qualify. `extra_seeds` join the multistart seed pool.
inline OpNormResult op_norm(const SoftLinearOperator& t, const SoftNorm& nin, const SoftNorm& nout,
                            const OpNormConfig& cfg = {}, std::span<const SoftVector> extra_seeds = {}) {
  cfg.validate();
  detail::require_opnorm_args(t, nin, nout);
  if (cfg.method == OpNormMethod::grid) return op_norm_grid(t, nin, nout, cfg.grid_resolution);

  auto res = detail::op_norm_multistart(t, nin, nout, cfg, extra_seeds);
  if (cfg.with_oracle && t.in_dim() + 1 <= kMaxGridLiftedDim) {
    const auto oracle = op_norm_grid(t, nin, nout, cfg.grid_resolution);
    res.certificate_gap = oracle.value - res.value;
  }
  return res;
}

}  // namespace softnls
