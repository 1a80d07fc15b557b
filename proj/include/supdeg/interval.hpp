#pragma once

// Superiority degrees under incomplete information.
//
// When a pair is incomparable its degree is only known to lie in [−φ*, φ*].
// Taking the optimistic end for every missing pair gives the upper degree
// u(x, y), the pessimistic end the lower degree d(x, y). Weighted sums of these
// bound each alternative's utility:
//
//   f_d(x) = φ̄(x) − μ(x)·φ*      f_u(x) = φ̄(x) + μ(x)·φ*
//
// where φ̄(x) sums the known degrees and μ(x) is the weight of the alternatives
// incomparable with x. Every new comparison shrinks the intervals.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "group.hpp"
#include "relations.hpp"
#include "superiority.hpp"

namespace supdeg {

class PartialSDMatrix {
 public:
  PartialSDMatrix() = default;

  /// `values` is ignored where `present` is false. Without `phi_star` the bound
  /// defaults to the largest known magnitude.
  PartialSDMatrix(AlternativeSet base, RealMatrix values, BoolMatrix present, std::optional<double> phi_star = {},
                  double eps = kTolerance)
      : base_(std::move(base)), values_(std::move(values)), present_(std::move(present)) {
    const std::size_t n = base_.size();
    if (values_.size() != n || present_.size() != n)
      throw DimensionError("partial SD matrix: expected " + std::to_string(n) + "x" + std::to_string(n) + " entries");
    double observed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!present_(i, i) || values_(i, i) != 0.0)
        throw InvariantViolation("partial.diagonal", "cell (" + cell(i, i) + ") must be present and zero");
      for (std::size_t j = 0; j < n; ++j) {
        if (present_(i, j) != present_(j, i))
          throw InvariantViolation("partial.mask_symmetry", "cell (" + cell(i, j) + ") present in one direction only");
        if (!present_(i, j)) {
          values_(i, j) = 0.0;
          continue;
        }
        if (!std::isfinite(values_(i, j)))
          throw InvariantViolation("partial.finite", "cell (" + cell(i, j) + ") is not finite");
        if (j > i && std::abs(values_(i, j) + values_(j, i)) > eps)
          throw InvariantViolation("partial.skew_symmetry",
                                   "cells (" + cell(i, j) + ") and (" + cell(j, i) + ") are not opposite");
        observed = std::max(observed, std::abs(values_(i, j)));
      }
    }
    phi_star_ = phi_star.value_or(observed);
    if (!(phi_star_ > 0.0) || !std::isfinite(phi_star_))
      throw InvariantViolation("partial.phi_star", "bound must be positive; supply it explicitly");
    if (observed > phi_star_ + eps)
      throw InvariantViolation("partial.phi_star", "a known entry exceeds the bound " + std::to_string(phi_star_));
  }

  /// Every pair known.
  static PartialSDMatrix complete(const SDMatrix& m, std::optional<double> phi_star = {}) {
    const std::size_t n = m.size();
    if (!phi_star && m.phi_star() == 0.0) phi_star = 1.0;
    return PartialSDMatrix(m.base(), m.values(), BoolMatrix(n, 1), phi_star);
  }

  /// Only the diagonal known.
  static PartialSDMatrix unknown(AlternativeSet base, double phi_star) {
    const std::size_t n = base.size();
    BoolMatrix present(n, 0);
    for (std::size_t i = 0; i < n; ++i) present(i, i) = 1;
    return PartialSDMatrix(std::move(base), RealMatrix(n, 0.0), std::move(present), phi_star);
  }

  const AlternativeSet& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }
  double phi_star() const noexcept { return phi_star_; }
  const RealMatrix& values() const noexcept { return values_; }
  const BoolMatrix& mask() const noexcept { return present_; }

  bool present(std::size_t i, std::size_t j) const { return present_(i, j) != 0; }
  bool present(std::string_view x, std::string_view y) const { return present(base_.index_of(x), base_.index_of(y)); }

  /// Known degree; 0 for absent pairs.
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }

  /// Absent pairs (i, j) with i < j.
  std::vector<std::pair<std::size_t, std::size_t>> absent_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (!present(i, j)) out.emplace_back(i, j);
    return out;
  }

  bool is_complete() const { return absent_pairs().empty(); }

  /// The known degrees as a full matrix; requires completeness.
  SDMatrix to_sd() const {
    if (!is_complete()) throw WrongDataKind("partial SD matrix still has incomparable pairs");
    return SDMatrix(base_, values_);
  }

  /// Relation NC of comparable pairs.
  PreferenceRelation comparability() const {
    PreferenceRelation r(base_);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (present(i, j)) r.insert(i, j);
    return r;
  }

  /// Copy with (i, j) and (j, i) filled in.
  PartialSDMatrix with(std::size_t i, std::size_t j, double value) const {
    PartialSDMatrix out = *this;
    out.values_(i, j) = value;
    out.values_(j, i) = -value;
    out.present_(i, j) = out.present_(j, i) = 1;
    return out;
  }

  bool operator==(const PartialSDMatrix&) const = default;

 private:
  std::string cell(std::size_t i, std::size_t j) const { return base_.id(i) + "," + base_.id(j); }

  AlternativeSet base_;
  RealMatrix values_;
  BoolMatrix present_;
  double phi_star_ = 0.0;
};

struct Partition {
  std::vector<std::string> comparable;    // X1(x), contains x
  std::vector<std::string> incomparable;  // X2(x)
};

inline Partition partition(const PartialSDMatrix& p, std::string_view x) {
  const auto i = p.base().index_of(x);
  Partition out;
  for (std::size_t j = 0; j < p.size(); ++j) (p.present(i, j) ? out.comparable : out.incomparable).push_back(p.base().id(j));
  return out;
}

struct Bounds {
  double upper = 0.0;  // u(x, y)
  double lower = 0.0;  // d(x, y)
};

inline Bounds bounds(const PartialSDMatrix& p, std::size_t i, std::size_t j) {
  if (p.present(i, j)) return {p(i, j), p(i, j)};
  return {p.phi_star(), -p.phi_star()};
}

inline Bounds bounds(const PartialSDMatrix& p, std::string_view x, std::string_view y) {
  return bounds(p, p.base().index_of(x), p.base().index_of(y));
}

/// Per-alternative utility intervals [f_d(x), f_u(x)].
struct IntervalEstimate {
  AlternativeSet base;
  std::vector<double> lower;         // f_d
  std::vector<double> upper;         // f_u
  std::vector<double> missing_mass;  // μ(x) ∈ [0, 1]
  double phi_star = 0.0;

  std::size_t size() const noexcept { return lower.size(); }
  double width(std::size_t i) const { return upper[i] - lower[i]; }

  /// [lower, upper] of `other` lies inside ours for every alternative.
  bool contains(const IntervalEstimate& other) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (other.lower[i] < lower[i] || other.upper[i] > upper[i]) return false;
    return true;
  }
};

/// f_d(x) = Σ_y λ(y) d(x, y) and f_u(x) = Σ_y λ(y) u(x, y).
inline IntervalEstimate interval_utilities(const PartialSDMatrix& p, const WeightVector& w) {
  require_same_base(p.base(), w.base(), "interval_utilities");
  const std::size_t n = p.size();
  IntervalEstimate est{p.base(), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                       p.phi_star()};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto b = bounds(p, x, y);
      est.lower[x] += w[y] * b.lower;
      est.upper[x] += w[y] * b.upper;
      est.missing_mass[x] += p.present(x, y) ? 0.0 : w[y];
    }
  return est;
}

/// Same intervals through φ̄(x) ∓ μ(x)·φ*.
inline IntervalEstimate interval_utilities_split(const PartialSDMatrix& p, const WeightVector& w) {
  require_same_base(p.base(), w.base(), "interval_utilities_split");
  const std::size_t n = p.size();
  IntervalEstimate est{p.base(), std::vector<double>(n), std::vector<double>(n), std::vector<double>(n, 0.0),
                       p.phi_star()};
  for (std::size_t x = 0; x < n; ++x) {
    double known = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      if (p.present(x, y))
        known += w[y] * p(x, y);
      else
        est.missing_mass[x] += w[y];
    }
    est.lower[x] = known - est.missing_mass[x] * p.phi_star();
    est.upper[x] = known + est.missing_mass[x] * p.phi_star();
  }
  return est;
}

struct MissingInfo {
  double mean = 0.0;  // Σ λ(x) μ(x)
  double max = 0.0;   // max μ(x)
  double sum = 0.0;   // Σ λ(x) over x with μ(x) > 0
};

inline MissingInfo missing_info(const IntervalEstimate& est, const WeightVector& w) {
  require_same_base(est.base, w.base(), "missing_info");
  MissingInfo out;
  for (std::size_t x = 0; x < est.size(); ++x) {
    out.mean += w[x] * est.missing_mass[x];
    out.max = std::max(out.max, est.missing_mass[x]);
    if (est.missing_mass[x] > 0.0) out.sum += w[x];
  }
  return out;
}

struct IntegralBounds {
  RealMatrix upper;  // U(x, y) = Σ_r λ(r)[u(x, r) − d(y, r)]
  RealMatrix lower;  // D(x, y) = Σ_r λ(r)[d(x, r) − u(y, r)]
};

inline IntegralBounds integral_bounds(const PartialSDMatrix& p, const WeightVector& w) {
  require_same_base(p.base(), w.base(), "integral_bounds");
  const std::size_t n = p.size();
  IntegralBounds out{RealMatrix(n, 0.0), RealMatrix(n, 0.0)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      double up = 0.0;
      double lo = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const auto bx = bounds(p, x, r);
        const auto by = bounds(p, y, r);
        up += w[r] * (bx.upper - by.lower);
        lo += w[r] * (bx.lower - by.upper);
      }
      out.upper(x, y) = up;
      out.lower(x, y) = lo;
    }
  return out;
}

/// Strict interval dominance: (x, y) iff f_d(x) > f_u(y). Touching intervals
/// stay incomparable.
inline PreferenceRelation interval_order(const IntervalEstimate& est) {
  PreferenceRelation r(est.base);
  for (std::size_t i = 0; i < est.size(); ++i)
    for (std::size_t j = 0; j < est.size(); ++j)
      if (est.lower[i] > est.upper[j]) r.insert(i, j);
  return r;
}

/// Records a comparison for a currently incomparable pair. Known pairs are
/// never overwritten.
inline PartialSDMatrix refine(const PartialSDMatrix& p, std::string_view x, std::string_view y, double value,
                              double eps = kTolerance) {
  const auto i = p.base().index_of(x);
  const auto j = p.base().index_of(y);
  if (i == j) throw InvalidArgument("cannot refine '" + std::string(x) + "' against itself");
  if (p.present(i, j))
    throw InvalidArgument("pair (" + std::string(x) + "," + std::string(y) + ") is already known");
  if (!std::isfinite(value) || std::abs(value) > p.phi_star() + eps)
    throw InvalidArgument("value " + std::to_string(value) + " lies outside [-phi*, phi*] = [" +
                          std::to_string(-p.phi_star()) + ", " + std::to_string(p.phi_star()) + "]");
  return p.with(i, j, std::clamp(value, -p.phi_star(), p.phi_star()));
}

/// Per pair: a experts prefer x, b prefer y, p cannot compare. Ties add ½ to
/// both a and b, so a + b + p = N off the diagonal.
struct AbstentionTally {
  AlternativeSet base;
  RealMatrix a;
  RealMatrix b;
  RealMatrix p;
  std::size_t experts = 0;
};

inline AbstentionTally abstention_tally(const VectorPreferenceRelation& vpr) {
  const std::size_t n = vpr.base().size();
  AbstentionTally t{vpr.base(), RealMatrix(n, 0.0), RealMatrix(n, 0.0), RealMatrix(n, 0.0), vpr.experts()};
  for (const auto& r : vpr.relations())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) {
          t.a(i, j) += 0.5;
          t.b(i, j) += 0.5;
          continue;
        }
        const bool fwd = r.contains(i, j);
        const bool bwd = r.contains(j, i);
        if (fwd && bwd) {
          t.a(i, j) += 0.5;
          t.b(i, j) += 0.5;
        } else if (fwd) {
          t.a(i, j) += 1.0;
        } else if (bwd) {
          t.b(i, j) += 1.0;
        } else {
          t.p(i, j) += 1.0;
        }
      }
  return t;
}

struct AbstentionBounds {
  RealMatrix degree;  // φ = a − b
  RealMatrix lower;   // d = (a − b) − p
  RealMatrix upper;   // u = (a − b) + p
};

inline AbstentionBounds abstention_bounds(const AbstentionTally& t) {
  const std::size_t n = t.base.size();
  AbstentionBounds out{RealMatrix(n, 0.0), RealMatrix(n, 0.0), RealMatrix(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double phi = t.a(i, j) - t.b(i, j);
      out.degree(i, j) = phi;
      out.lower(i, j) = phi - t.p(i, j);
      out.upper(i, j) = phi + t.p(i, j);
    }
  return out;
}

/// Intervals for a panel with abstentions. φ* is taken as N, so μ(x) is the
/// λ-weighted abstention share Σ_y λ(y) p(x, y) / N.
inline IntervalEstimate group_intervals(const AbstentionTally& t, const WeightVector& w) {
  require_same_base(t.base, w.base(), "group_intervals");
  const std::size_t n = t.base.size();
  const double bound = static_cast<double>(t.experts);
  IntervalEstimate est{t.base, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), bound};
  for (std::size_t x = 0; x < n; ++x) {
    double known = 0.0;
    double abstained = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      known += w[y] * (t.a(x, y) - t.b(x, y));
      abstained += w[y] * t.p(x, y);
    }
    est.lower[x] = known - abstained;
    est.upper[x] = known + abstained;
    est.missing_mass[x] = abstained / bound;
  }
  return est;
}

}  // namespace supdeg
