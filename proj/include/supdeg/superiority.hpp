#pragma once

// Superiority degrees: skew-symmetric scores φ(x, y) of how much x outranks y,
// measured on a differences scale.
//
//   H  skew-symmetric:   φ(x, y) = −φ(y, x)
//   T  additive:         φ(x, z) + φ(z, y) = φ(x, y)
//   S  max-transitive:   chains of nonnegative degrees are dominated by the ends
//
// A matrix in H ∩ T is a difference of potentials, φ(x, y) = f(x) − f(y). The
// integral degree F(x, y) = Σ_z λ(z)[φ(x, z) − φ(y, z)] always lies in H ∩ T,
// so every matrix yields a utility through it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "alternatives.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "relations.hpp"

namespace supdeg {

inline constexpr double kTolerance = 1e-9;

/// Significance coefficients λ(x) ≥ 0 with Σ λ(x) = 1.
class WeightVector {
 public:
  WeightVector() = default;

  WeightVector(AlternativeSet base, std::vector<double> values, double eps = kTolerance)
      : base_(std::move(base)), values_(std::move(values)) {
    if (values_.size() != base_.size())
      throw DimensionError("weights: expected " + std::to_string(base_.size()) + " values, got " +
                           std::to_string(values_.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i]) || values_[i] < 0.0)
        throw InvariantViolation("weights.nonnegative", "weight of '" + base_.id(i) + "' is negative or not finite");
      sum += values_[i];
    }
    if (std::abs(sum - 1.0) > eps)
      throw InvariantViolation("weights.sum", "weights sum to " + std::to_string(sum) + ", expected 1");
  }

  /// λ(x) = 1/n.
  static WeightVector uniform(const AlternativeSet& base) {
    return WeightVector(base, std::vector<double>(base.size(), 1.0 / static_cast<double>(base.size())));
  }

  const AlternativeSet& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::string_view id) const { return values_[base_.index_of(id)]; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const WeightVector&) const = default;

 private:
  AlternativeSet base_;
  std::vector<double> values_;
};

/// Square skew-symmetric matrix of superiority degrees.
class SDMatrix {
 public:
  SDMatrix() = default;

  /// Rejects matrices that are not skew-symmetric within `eps` or have a
  /// nonzero diagonal; the message names the offending cell.
  SDMatrix(AlternativeSet base, RealMatrix phi, double eps = kTolerance)
      : base_(std::move(base)), phi_(std::move(phi)) {
    const std::size_t n = base_.size();
    if (phi_.size() != n)
      throw DimensionError("SD matrix: expected " + std::to_string(n) + "x" + std::to_string(n) + " entries");
    for (std::size_t i = 0; i < n; ++i) {
      if (phi_(i, i) != 0.0)
        throw InvariantViolation("sd.zero_diagonal", "cell (" + base_.id(i) + "," + base_.id(i) + ") is nonzero");
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(phi_(i, j)))
          throw InvariantViolation("sd.finite", "cell (" + base_.id(i) + "," + base_.id(j) + ") is not finite");
        if (j > i && std::abs(phi_(i, j) + phi_(j, i)) > eps)
          throw InvariantViolation("sd.skew_symmetry", "cells (" + base_.id(i) + "," + base_.id(j) + ") and (" +
                                                           base_.id(j) + "," + base_.id(i) + ") are not opposite");
      }
    }
  }

  static SDMatrix zero(AlternativeSet base) {
    const std::size_t n = base.size();
    return SDMatrix(std::move(base), RealMatrix(n, 0.0));
  }

  /// φ(x, y) = f(x) − f(y).
  static SDMatrix from_potential(AlternativeSet base, const std::vector<double>& f) {
    const std::size_t n = base.size();
    if (f.size() != n) throw DimensionError("potential size does not match alternatives");
    RealMatrix phi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) phi(i, j) = i == j ? 0.0 : f[i] - f[j];
    return SDMatrix(std::move(base), std::move(phi));
  }

  /// Builds the matrix from entries above the diagonal, (0,1), (0,2), ..., (1,2), ...
  static SDMatrix from_upper(AlternativeSet base, const std::vector<double>& upper) {
    const std::size_t n = base.size();
    if (upper.size() != n * (n - 1) / 2) throw DimensionError("upper triangle has the wrong number of entries");
    RealMatrix phi(n, 0.0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++k) {
        phi(i, j) = upper[k];
        phi(j, i) = -upper[k];
      }
    return SDMatrix(std::move(base), std::move(phi));
  }

  const AlternativeSet& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return base_.size(); }
  const RealMatrix& values() const noexcept { return phi_; }

  double operator()(std::size_t i, std::size_t j) const { return phi_(i, j); }
  double at(std::string_view x, std::string_view y) const { return phi_(base_.index_of(x), base_.index_of(y)); }

  /// φ* = max |φ(x, y)|.
  double phi_star() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) m = std::max(m, std::abs(phi_(i, j)));
    return m;
  }

  bool operator==(const SDMatrix&) const = default;

 private:
  AlternativeSet base_;
  RealMatrix phi_;
};

/// Scores on a differences scale: only orderings and differences carry meaning.
class UtilityVector {
 public:
  UtilityVector() = default;
  UtilityVector(AlternativeSet base, std::vector<double> values) : base_(std::move(base)), values_(std::move(values)) {
    if (values_.size() != base_.size()) throw DimensionError("utility size does not match alternatives");
  }

  const AlternativeSet& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::string_view id) const { return values_[base_.index_of(id)]; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Descending tie groups. Values within `eps` of a group's leader join it;
  /// members of a group are listed by identifier.
  std::vector<std::vector<std::string>> ranking(double eps = kTolerance) const {
    std::vector<std::size_t> order(values_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (values_[a] != values_[b]) return values_[a] > values_[b];
      return base_.id(a) < base_.id(b);
    });
    std::vector<std::vector<std::string>> groups;
    double leader = 0.0;
    for (auto i : order) {
      if (groups.empty() || leader - values_[i] > eps) {
        groups.emplace_back();
        leader = values_[i];
      }
      groups.back().push_back(base_.id(i));
    }
    for (auto& g : groups) std::sort(g.begin(), g.end());
    return groups;
  }

  /// Strict order induced by the values: (x, y) iff value(x) > value(y).
  PreferenceRelation strict_order() const {
    PreferenceRelation r(base_);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (values_[i] > values_[j]) r.insert(i, j);
    return r;
  }

 private:
  AlternativeSet base_;
  std::vector<double> values_;
};

struct ClassFlags {
  bool in_h = false;
  bool in_t = false;
  bool in_s = false;
};

/// Membership of `m` in the classes H, T and S.
///
/// S is checked over distinct triples where φ(x, z) ≥ 0 and φ(z, y) ≥ 0,
/// requiring φ(x, y) ≥ max{φ(x, z), φ(z, y)} − eps. Membership makes every
/// level relation transitive.
inline ClassFlags classify(const SDMatrix& m, double eps = kTolerance) {
  const std::size_t n = m.size();
  ClassFlags flags{true, true, true};
  for (std::size_t x = 0; x < n; ++x) {
    if (std::abs(m(x, x)) > eps) flags.in_h = false;
    for (std::size_t y = 0; y < n; ++y) {
      if (std::abs(m(x, y) + m(y, x)) > eps) flags.in_h = false;
      for (std::size_t z = 0; z < n; ++z) {
        if (std::abs(m(x, z) + m(z, y) - m(x, y)) > eps) flags.in_t = false;
        if (z == x || z == y || x == y) continue;
        if (m(x, z) >= 0.0 && m(z, y) >= 0.0 && m(x, y) < std::max(m(x, z), m(z, y)) - eps) flags.in_s = false;
      }
    }
  }
  return flags;
}

/// Σ_x Σ_y λ(x)λ(y)φ(x, y); zero for every skew-symmetric matrix.
inline double weighted_total(const SDMatrix& m, const WeightVector& w) {
  require_same_base(m.base(), w.base(), "weighted_total");
  double total = 0.0;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) total += w[x] * w[y] * m(x, y);
  return total;
}

/// Integral superiority degree F(x, y) = Σ_z λ(z)[φ(x, z) − φ(y, z)].
inline SDMatrix isd(const SDMatrix& m, const WeightVector& w) {
  require_same_base(m.base(), w.base(), "isd");
  const std::size_t n = m.size();
  RealMatrix f(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      double s = 0.0;
      for (std::size_t z = 0; z < n; ++z) s += w[z] * (m(x, z) - m(y, z));
      f(x, y) = s;
    }
  return SDMatrix(m.base(), std::move(f));
}

/// f(x) = Σ_y λ(y)φ(x, y). A faithful potential only when `m` is in T, but
/// always computed.
inline UtilityVector potential(const SDMatrix& m, const WeightVector& w) {
  require_same_base(m.base(), w.base(), "potential");
  std::vector<double> f(m.size(), 0.0);
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) f[x] += w[y] * m(x, y);
  return UtilityVector(m.base(), std::move(f));
}

/// q = potential of the integral degree; F(x, y) = q(x) − q(y) for any input.
inline UtilityVector utility(const SDMatrix& m, const WeightVector& w) { return potential(isd(m, w), w); }

/// Strict pairs of `r` carry positive degrees and identity pairs carry zero.
/// Only that direction is checked.
inline bool sd_coordinated_with(const SDMatrix& m, const PreferenceRelation& r, double eps = kTolerance) {
  require_same_base(m.base(), r.base(), "sd_coordinated_with");
  const auto [identity, strict] = decompose(r);
  for (auto [i, j] : strict.pairs())
    if (!(m(i, j) > eps)) return false;
  for (auto [i, j] : identity.pairs())
    if (std::abs(m(i, j)) > eps) return false;
  return true;
}

/// m criteria over one base, with criterion weights λ_j ≥ 0 summing to 1.
class CriterionFamily {
 public:
  CriterionFamily() = default;

  CriterionFamily(std::vector<SDMatrix> criteria, std::vector<double> weights, double eps = kTolerance)
      : criteria_(std::move(criteria)), weights_(std::move(weights)) {
    if (criteria_.empty()) throw InvariantViolation("criteria.nonempty", "a family needs at least one criterion");
    if (weights_.size() != criteria_.size())
      throw DimensionError("criteria: " + std::to_string(criteria_.size()) + " criteria but " +
                           std::to_string(weights_.size()) + " weights");
    double sum = 0.0;
    for (std::size_t j = 0; j < criteria_.size(); ++j) {
      require_same_base(criteria_.front().base(), criteria_[j].base(), "criterion family");
      if (!std::isfinite(weights_[j]) || weights_[j] < 0.0)
        throw InvariantViolation("criteria.weights.nonnegative", "criterion " + std::to_string(j) + " weight");
      sum += weights_[j];
    }
    if (std::abs(sum - 1.0) > eps)
      throw InvariantViolation("criteria.weights.sum", "criterion weights sum to " + std::to_string(sum));
  }

  const AlternativeSet& base() const { return criteria_.front().base(); }
  std::size_t size() const noexcept { return criteria_.size(); }
  const std::vector<SDMatrix>& criteria() const noexcept { return criteria_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  bool operator==(const CriterionFamily&) const = default;

 private:
  std::vector<SDMatrix> criteria_;
  std::vector<double> weights_;
};

/// φ(x, y) = Σ_j λ_j φ_j(x, y). Stays in H; stays in T when every φ_j is.
inline SDMatrix aggregate(const CriterionFamily& fam) {
  const std::size_t n = fam.base().size();
  RealMatrix phi(n, 0.0);
  for (std::size_t c = 0; c < fam.size(); ++c)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) phi(i, j) += fam.weights()[c] * fam.criteria()[c](i, j);
  return SDMatrix(fam.base(), std::move(phi));
}

struct Convolution {
  UtilityVector total;                    // L(x) = Σ_j λ_j K_j(x)
  std::vector<UtilityVector> per_criterion;  // K_j(x) = Σ_y λ(y) φ_j(x, y)
  bool aggregate_in_t = false;            // L is a faithful utility only when set
};

inline Convolution convolution(const CriterionFamily& fam, const WeightVector& w, double eps = kTolerance) {
  require_same_base(fam.base(), w.base(), "convolution");
  Convolution out;
  std::vector<double> total(fam.base().size(), 0.0);
  for (std::size_t c = 0; c < fam.size(); ++c) {
    auto k = potential(fam.criteria()[c], w);
    for (std::size_t x = 0; x < total.size(); ++x) total[x] += fam.weights()[c] * k[x];
    out.per_criterion.push_back(std::move(k));
  }
  out.total = UtilityVector(fam.base(), std::move(total));
  out.aggregate_in_t = classify(aggregate(fam), eps).in_t;
  return out;
}

}  // namespace supdeg
