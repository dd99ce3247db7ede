// Copyright 2026 The Percolation Games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "percolation/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "percolation/errors.hpp"
#include "percolation/game.hpp"
#include "percolation/prf.hpp"

namespace percolation {
namespace prf {

bool bernoulli(std::uint64_t h, double p) {
  if (!(p > 0.0)) return false;
  if (p >= 1.0) return true;
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
  return h < threshold;
}

}  // namespace prf

namespace {

// Normal axis and the two in-plane axes of a square.
constexpr std::size_t normal_axis(SquareKind kind) {
  return kind == SquareKind::kOne ? 0 : 1;
}
constexpr std::size_t first_plane_axis(SquareKind kind) {
  return kind == SquareKind::kOne ? 1 : 0;
}
constexpr std::size_t kSecondPlaneAxis = 2;

constexpr prf::Stream stream_of(SquareKind kind) {
  return kind == SquareKind::kOne ? prf::Stream::kSquareOne
                                  : prf::Stream::kSquareZero;
}

constexpr std::array<SquareKind, 2> kKinds = {SquareKind::kOne,
                                              SquareKind::kZero};

Box square_box(SquareKind kind, int scale, const Center& c) {
  const Coord half = square_side(scale) / 2;
  std::vector<Coord> lo(c.begin(), c.end()), hi(c.begin(), c.end());
  for (std::size_t k : {first_plane_axis(kind), kSecondPlaneAxis}) {
    lo[k] -= half;
    hi[k] += half;
  }
  return Box(std::move(lo), std::move(hi));
}

// Centers whose square meets `region`.
Box candidate_box(SquareKind kind, int scale, const Box& region) {
  std::vector<Coord> radius(3, 0);
  const Coord half = square_side(scale) / 2;
  radius[first_plane_axis(kind)] = half;
  radius[kSecondPlaneAxis] = half;
  return region.dilated(radius);
}

Box intersect(const Box& a, const Box& b) {
  std::vector<Coord> lo(a.dim()), hi(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    lo[k] = std::max(a.lo()[k], b.lo()[k]);
    hi[k] = std::min(a.hi()[k], b.hi()[k]);
  }
  return Box(std::move(lo), std::move(hi));
}

Center to_center(const LatticePoint& p) { return {p[0], p[1], p[2]}; }

std::uint64_t volume_or_max(const Box& b) {
  try {
    return b.volume();
  } catch (const OverflowError&) {
    return ~std::uint64_t{0};
  }
}

void check_matrix(const PayoffMatrix& m, std::size_t index) {
  const std::string where = "support matrix " + std::to_string(index);
  if (m.rows == 0 || m.cols == 0 || m.entries.size() != m.rows * m.cols) {
    throw ConfigError(where + " has inconsistent shape");
  }
  for (double v : m.entries) {
    if (!std::isfinite(v)) throw ConfigError(where + " has a non-finite entry");
  }
}

}  // namespace

bool square_covers(SquareKind kind, int scale, const Center& center,
                   std::span<const Coord> z) {
  const Coord half = square_side(scale) / 2;
  const std::size_t n = normal_axis(kind);
  const std::size_t a = first_plane_axis(kind);
  return z[n] == center[n] && std::abs(z[a] - center[a]) <= half &&
         std::abs(z[kSecondPlaneAxis] - center[kSecondPlaneAxis]) <= half;
}

void validate_model(const EnvironmentModel& model) {
  if (const auto* b = std::get_if<IidBernoulli>(&model)) {
    if (!(b->p >= 0.0 && b->p <= 1.0)) {
      throw ConfigError("Bernoulli parameter must lie in [0, 1]");
    }
  } else if (const auto* t = std::get_if<IidTable>(&model)) {
    if (t->support.empty()) throw ConfigError("table model has empty support");
    if (t->support.size() != t->probs.size()) {
      throw ConfigError("table model: " + std::to_string(t->support.size()) +
                        " matrices but " + std::to_string(t->probs.size()) +
                        " probabilities");
    }
    for (std::size_t k = 0; k < t->support.size(); ++k) {
      check_matrix(t->support[k], k);
      if (t->support[k].rows != t->support[0].rows ||
          t->support[k].cols != t->support[0].cols) {
        throw ConfigError("support matrices have different shapes");
      }
    }
    double sum = 0.0;
    for (double p : t->probs) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw ConfigError("table probabilities must be non-negative");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ConfigError("table probabilities sum to " + std::to_string(sum) +
                        ", expected 1");
    }
  } else {
    const auto& s = std::get<Squares>(model);
    if (s.k_max < 1 || s.k_max > kMaxSquareScale) {
      throw ConfigError("k_max must lie in [1, " +
                        std::to_string(kMaxSquareScale) + "]");
    }
    for (const auto& p : s.plants) {
      if (p.scale < 1 || p.scale > s.k_max) {
        throw ConfigError("planted square scale " + std::to_string(p.scale) +
                          " outside [1, k_max]");
      }
      if (p.center.dim() != 3) {
        throw ModelError("planted square center must have 3 coordinates");
      }
    }
  }
}

void validate_model(const EnvironmentModel& model, const GameSpec& spec) {
  validate_model(model);
  if (const auto* t = std::get_if<IidTable>(&model)) {
    const auto& m = t->support.front();
    if (m.rows != spec.num_actions_p1() || m.cols != spec.num_actions_p2()) {
      throw ConfigError("payoff matrices are " + std::to_string(m.rows) + "x" +
                        std::to_string(m.cols) + " but the game has " +
                        std::to_string(spec.num_actions_p1()) + "x" +
                        std::to_string(spec.num_actions_p2()) + " actions");
    }
  } else if (std::holds_alternative<Squares>(model) && spec.dim() != 3) {
    throw ModelError("Squares model requires dim = 3, game has dim " +
                     std::to_string(spec.dim()));
  }
}

SquareCatalog::SquareCatalog(Box region, int k_max)
    : region_(std::move(region)),
      k_max_(k_max),
      lists_(2 * static_cast<std::size_t>(k_max)) {}

const std::vector<Center>& SquareCatalog::centers(SquareKind kind,
                                                  int scale) const {
  if (scale < 1 || scale > k_max_) {
    throw RangeError("scale " + std::to_string(scale) + " outside [1, " +
                     std::to_string(k_max_) + "]");
  }
  return lists_[static_cast<std::size_t>(kind) * k_max_ + scale - 1];
}

std::vector<Center>& SquareCatalog::mutable_centers(SquareKind kind,
                                                    int scale) {
  return const_cast<std::vector<Center>&>(
      static_cast<const SquareCatalog&>(*this).centers(kind, scale));
}

std::size_t SquareCatalog::total() const {
  std::size_t t = 0;
  for (const auto& l : lists_) t += l.size();
  return t;
}

std::uint64_t catalog_work(const Squares& model, const Box& region) {
  if (!model.random_draws) return 0;
  std::uint64_t total = 0;
  for (SquareKind kind : kKinds) {
    for (int k = 1; k <= model.k_max; ++k) {
      const std::uint64_t v = volume_or_max(candidate_box(kind, k, region));
      if (v > ~std::uint64_t{0} - total) return ~std::uint64_t{0};
      total += v;
    }
  }
  return total;
}

SquareCatalog build_catalog(const Squares& model, std::uint64_t seed,
                            const Box& region, std::uint64_t work_budget) {
  validate_model(EnvironmentModel{model});
  if (region.dim() != 3) throw ModelError("Squares region must be 3-dimensional");
  if (region.empty()) throw ConfigError("catalog region is empty");
  const std::uint64_t work = catalog_work(model, region);
  if (work > work_budget) {
    throw BudgetError("square catalog scan over " + region.to_string(), work,
                      work_budget);
  }

  SquareCatalog catalog(region, model.k_max);
  for (SquareKind kind : kKinds) {
    for (int k = 1; k <= model.k_max; ++k) {
      auto& out = catalog.mutable_centers(kind, k);
      const Box cand = candidate_box(kind, k, region);
      if (model.random_draws) {
        const std::uint64_t base = prf::prefix(seed, stream_of(kind), k);
        const auto bits = static_cast<unsigned>(3 * k);
        for (Coord x = cand.lo()[0]; x <= cand.hi()[0]; ++x) {
          const std::uint64_t hx = prf::fold(base, x);
          for (Coord y = cand.lo()[1]; y <= cand.hi()[1]; ++y) {
            const std::uint64_t hy = prf::fold(hx, y);
            for (Coord h = cand.lo()[2]; h <= cand.hi()[2]; ++h) {
              if (prf::bernoulli_pow2(prf::fold(hy, h), bits)) {
                out.push_back({x, y, h});
              }
            }
          }
        }
      }
      for (const auto& p : model.plants) {
        if (p.kind == kind && p.scale == k && cand.contains(p.center)) {
          out.push_back(to_center(p.center));
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  return catalog;
}

ScalePair square_scales_direct(const Squares& model, std::uint64_t seed,
                               std::span<const Coord> z) {
  if (z.size() != 3) throw ModelError("Squares model is defined on Z^3 only");
  ScalePair result;
  for (SquareKind kind : kKinds) {
    std::optional<int> found;
    for (int k = model.k_max; k >= 1 && !found; --k) {
      for (const auto& p : model.plants) {
        if (p.kind == kind && p.scale == k &&
            square_covers(kind, k, to_center(p.center), z)) {
          found = k;
          break;
        }
      }
      if (found || !model.random_draws) continue;
      const Coord half = square_side(k) / 2;
      const std::size_t a = first_plane_axis(kind);
      Center c{z[0], z[1], z[2]};
      const auto bits = static_cast<unsigned>(3 * k);
      for (Coord da = -half; da <= half && !found; ++da) {
        for (Coord db = -half; db <= half; ++db) {
          c[a] = z[a] + da;
          c[kSecondPlaneAxis] = z[kSecondPlaneAxis] + db;
          if (prf::bernoulli_pow2(prf::draw(seed, stream_of(kind), k, c), bits)) {
            found = k;
            break;
          }
        }
      }
    }
    (kind == SquareKind::kOne ? result.one : result.zero) = found;
  }
  return result;
}

Environment::Environment(EnvironmentModel model, std::uint64_t seed,
                         std::optional<Box> region,
                         std::uint64_t catalog_budget)
    : model_(std::move(model)),
      seed_(seed),
      region_(std::move(region)),
      catalog_budget_(catalog_budget) {
  validate_model(model_);
  if (const auto* t = std::get_if<IidTable>(&model_)) {
    cumulative_.resize(t->probs.size());
    std::partial_sum(t->probs.begin(), t->probs.end(), cumulative_.begin());
  }
  const auto* squares = std::get_if<Squares>(&model_);
  if (!squares || !region_) return;

  catalog_ = build_catalog(*squares, seed_, *region_, catalog_budget_);
  const Box& r = *region_;
  max_one_.assign(r.volume(), 0);
  max_zero_.assign(r.volume(), 0);
  for (SquareKind kind : kKinds) {
    auto& raster = kind == SquareKind::kOne ? max_one_ : max_zero_;
    for (int k = 1; k <= squares->k_max; ++k) {
      for (const Center& c : catalog_->centers(kind, k)) {
        const Box painted = intersect(square_box(kind, k, c), r);
        for_each_point(painted, [&](std::span<const Coord> z, std::size_t) {
          auto& cell = raster[r.index(z)];
          cell = std::max<std::int8_t>(cell, static_cast<std::int8_t>(k));
        });
      }
    }
  }
}

Environment Environment::with_region(const Box& region) const {
  return Environment(model_, seed_, region, catalog_budget_);
}

const Squares& Environment::squares() const {
  const auto* s = std::get_if<Squares>(&model_);
  if (!s) throw ModelError("operation requires the Squares model");
  return *s;
}

bool Environment::state_only() const {
  return !std::holds_alternative<IidTable>(model_);
}

std::size_t Environment::table_index(std::span<const Coord> z) const {
  const double u = prf::to_unit(prf::draw(seed_, prf::Stream::kIid, 0, z));
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(it - cumulative_.begin(),
                               cumulative_.size() - 1);
}

double Environment::state_payoff(std::span<const Coord> z) const {
  if (const auto* b = std::get_if<IidBernoulli>(&model_)) {
    return prf::bernoulli(prf::draw(seed_, prf::Stream::kIid, 0, z), b->p)
               ? 1.0
               : 0.0;
  }
  if (std::holds_alternative<Squares>(model_)) {
    return squares_payoff(square_scales(z));
  }
  throw ModelError("table payoffs depend on the action pair");
}

double Environment::payoff(std::span<const Coord> z, std::size_t i,
                           std::size_t j) const {
  if (const auto* t = std::get_if<IidTable>(&model_)) {
    const auto& m = t->support[table_index(z)];
    if (i >= m.rows || j >= m.cols) throw RangeError("action out of range");
    return m(i, j);
  }
  return state_payoff(z);
}

void Environment::fill_payoffs(std::span<const Coord> z,
                               std::span<double> out) const {
  if (const auto* t = std::get_if<IidTable>(&model_)) {
    const auto& m = t->support[table_index(z)];
    if (out.size() != m.entries.size()) {
      throw ModelError("payoff buffer does not match matrix shape");
    }
    std::copy(m.entries.begin(), m.entries.end(), out.begin());
    return;
  }
  std::fill(out.begin(), out.end(), state_payoff(z));
}

double Environment::sup_norm() const {
  if (const auto* t = std::get_if<IidTable>(&model_)) {
    double s = 0.0;
    for (const auto& m : t->support) {
      for (double v : m.entries) s = std::max(s, std::abs(v));
    }
    return s;
  }
  return 1.0;
}

ScalePair Environment::square_scales(std::span<const Coord> z) const {
  const Squares& s = squares();
  if (z.size() != 3) throw ModelError("Squares model is defined on Z^3 only");
  if (region_ && region_->contains(z)) {
    const std::size_t idx = region_->index(z);
    ScalePair r;
    if (max_one_[idx]) r.one = max_one_[idx];
    if (max_zero_[idx]) r.zero = max_zero_[idx];
    return r;
  }
  return square_scales_direct(s, seed_, z);
}

std::vector<LatticePoint> find_complete_squares(const Environment& env,
                                                SquareKind kind, int scale,
                                                Coord radius) {
  const auto* model = std::get_if<Squares>(&env.model());
  if (!model) throw ModelError("find_complete_squares requires Squares");
  if (scale < 1 || scale > model->k_max) {
    throw RangeError("scale " + std::to_string(scale) + " exceeds k_max " +
                     std::to_string(model->k_max));
  }
  if (radius < 0) throw RangeError("search radius must be non-negative");

  std::vector<Center> candidates;
  for (const auto& p : model->plants) {
    if (p.kind == kind && p.scale == scale && p.center.norm1() <= radius) {
      candidates.push_back(to_center(p.center));
    }
  }
  if (model->random_draws) {
    const auto bits = static_cast<unsigned>(3 * scale);
    for (Coord a = -radius; a <= radius; ++a) {
      const Coord ra = radius - std::abs(a);
      for (Coord b = -ra; b <= ra; ++b) {
        const Coord rb = ra - std::abs(b);
        for (Coord c = -rb; c <= rb; ++c) {
          const Center ctr{a, b, c};
          if (prf::bernoulli_pow2(
                  prf::draw(env.seed(), stream_of(kind), scale, ctr), bits)) {
            candidates.push_back(ctr);
          }
        }
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  if (candidates.empty()) return {};

  std::vector<LatticePoint> boxes_corners;
  for (const auto& c : candidates) {
    const Box b = square_box(kind, scale, c);
    boxes_corners.emplace_back(std::vector<Coord>(b.lo().begin(), b.lo().end()));
    boxes_corners.emplace_back(std::vector<Coord>(b.hi().begin(), b.hi().end()));
  }
  const Box needed = Box::hull(boxes_corners);
  const bool covered = env.region() && env.region()->contains(needed);
  const Environment local = covered ? env : env.with_region(needed);

  const double want = kind == SquareKind::kOne ? 1.0 : 0.0;
  std::vector<LatticePoint> out;
  for (const auto& c : candidates) {
    bool complete = true;
    for_each_point(square_box(kind, scale, c),
                   [&](std::span<const Coord> z, std::size_t) {
                     if (complete && local.state_payoff(z) != want) {
                       complete = false;
                     }
                   });
    if (complete) out.push_back(LatticePoint{c[0], c[1], c[2]});
  }
  return out;
}

FieldStats field_stats(const Environment& env, const Box& region,
                       std::size_t i, std::size_t j) {
  if (region.empty()) throw RangeError("field_stats over an empty region");
  const bool needs_catalog = std::holds_alternative<Squares>(env.model()) &&
                             !(env.region() && env.region()->contains(region));
  const Environment local = needs_catalog ? env.with_region(region) : env;
  double sum = 0.0;
  for_each_point(region, [&](std::span<const Coord> z, std::size_t) {
    sum += local.payoff(z, i, j);
  });
  const auto count = static_cast<std::size_t>(region.volume());
  return {sum / static_cast<double>(count), count};
}

}  // namespace percolation
