#pragma once
//
// Soft sets over a finite universe, soft points, and soft real numbers.
//
// A soft set over X with parameters E is a map F: E -> P(X). Here both E and
// X are finite; E is ordered so that dependent values (soft reals) have a
// canonical layout. Soft real numbers carry exactly one real per parameter
// and are ordered pointwise, which makes the order partial.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "softnls/error.hpp"

namespace softnls {

class ParameterSet {
 public:
  explicit ParameterSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    detail::require(!labels_.empty(), "parameter set must be non-empty");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      detail::require(seen.insert(l).second, "duplicate parameter label '" + l + "'");
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::string& operator[](std::size_t i) const { return labels_.at(i); }

  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  [[nodiscard]] bool contains(const std::string& label) const { return index_of(label).has_value(); }

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;

 private:
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// soft real numbers
// ---------------------------------------------------------------------------

class SoftReal {
 public:
  SoftReal(ParameterSet params, std::vector<double> values)
      : params_(std::move(params)), values_(std::move(values)) {
    detail::require(values_.size() == params_.size(),
                    "soft real needs exactly one value per parameter");
    for (double v : values_) detail::require(std::isfinite(v), "soft real values must be finite");
  }

  static SoftReal constant(const ParameterSet& params, double value) {
    return SoftReal(params, std::vector<double>(params.size(), value));
  }

  [[nodiscard]] const ParameterSet& params() const noexcept { return params_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_.at(i); }

  [[nodiscard]] double at(const std::string& label) const {
    auto i = params_.index_of(label);
    detail::require(i.has_value(), "unknown parameter label '" + label + "'");
    return values_[*i];
  }

  friend bool operator==(const SoftReal&, const SoftReal&) = default;

 private:
  ParameterSet params_;
  std::vector<double> values_;
};

inline SoftReal sr_add(const SoftReal& r, const SoftReal& s) {
  detail::require(r.params() == s.params(), "sr_add: parameter sets differ");
  std::vector<double> out(r.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i] + s[i];
  return SoftReal(r.params(), std::move(out));
}

/// Strongest pointwise relation between two soft reals. Pointwise order is
/// partial, hence `incomparable`.
enum class Comparison { eq, lt, le, gt, ge, incomparable };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::eq: return "EQ";
    case Comparison::lt: return "LT";
    case Comparison::le: return "LE";
    case Comparison::gt: return "GT";
    case Comparison::ge: return "GE";
    case Comparison::incomparable: return "INCOMPARABLE";
  }
  return "?";
}

inline Comparison sr_compare(const SoftReal& r, const SoftReal& s) {
  detail::require(r.params() == s.params(), "sr_compare: parameter sets differ");
  bool all_eq = true, all_lt = true, all_le = true, all_gt = true, all_ge = true;
  for (std::size_t i = 0; i < r.values().size(); ++i) {
    const double a = r[i], b = s[i];
    all_eq = all_eq && a == b;
    all_lt = all_lt && a < b;
    all_le = all_le && a <= b;
    all_gt = all_gt && a > b;
    all_ge = all_ge && a >= b;
  }
  if (all_eq) return Comparison::eq;
  if (all_lt) return Comparison::lt;
  if (all_le) return Comparison::le;
  if (all_gt) return Comparison::gt;
  if (all_ge) return Comparison::ge;
  return Comparison::incomparable;
}

/// r <= s pointwise.
inline bool sr_leq(const SoftReal& r, const SoftReal& s) {
  const auto c = sr_compare(r, s);
  return c == Comparison::eq || c == Comparison::lt || c == Comparison::le;
}

// ---------------------------------------------------------------------------
// soft sets and soft points
// ---------------------------------------------------------------------------

struct SoftPoint {
  std::string element;
  std::string param;

  friend bool operator==(const SoftPoint&, const SoftPoint&) = default;
  friend auto operator<=>(const SoftPoint&, const SoftPoint&) = default;
};

class SoftSet {
 public:
  using Subset = std::set<std::string>;

  /// `assignment[i]` is F(params[i]).
  SoftSet(ParameterSet params, Subset universe, std::vector<Subset> assignment)
      : params_(std::move(params)), universe_(std::move(universe)), assignment_(std::move(assignment)) {
    detail::require(assignment_.size() == params_.size(),
                    "soft set needs one assignment per parameter");
    for (const auto& sub : assignment_) {
      for (const auto& x : sub) {
        detail::require(universe_.count(x) == 1, "assigned element '" + x + "' outside universe");
      }
    }
  }

  /// F(e) = empty for every e.
  static SoftSet null(const ParameterSet& params, const Subset& universe) {
    return SoftSet(params, universe, std::vector<Subset>(params.size()));
  }

  /// F(e) = X for every e.
  static SoftSet absolute(const ParameterSet& params, const Subset& universe) {
    return SoftSet(params, universe, std::vector<Subset>(params.size(), universe));
  }

  [[nodiscard]] const ParameterSet& params() const noexcept { return params_; }
  [[nodiscard]] const Subset& universe() const noexcept { return universe_; }
  [[nodiscard]] const std::vector<Subset>& assignment() const noexcept { return assignment_; }

  [[nodiscard]] const Subset& at(const std::string& label) const {
    auto i = params_.index_of(label);
    detail::require(i.has_value(), "unknown parameter label '" + label + "'");
    return assignment_[*i];
  }

  [[nodiscard]] bool is_null() const {
    return std::all_of(assignment_.begin(), assignment_.end(), [](const Subset& s) { return s.empty(); });
  }

  [[nodiscard]] bool is_absolute() const {
    return std::all_of(assignment_.begin(), assignment_.end(),
                       [this](const Subset& s) { return s == universe_; });
  }

  /// Exactly one parameter maps to a singleton, all others to the empty set.
  [[nodiscard]] bool is_soft_point() const {
    std::size_t singletons = 0;
    for (const auto& s : assignment_) {
      if (s.size() > 1) return false;
      singletons += s.size();
    }
    return singletons == 1;
  }

  friend bool operator==(const SoftSet&, const SoftSet&) = default;

 private:
  ParameterSet params_;
  Subset universe_;
  std::vector<Subset> assignment_;
};

inline SoftSet to_soft_set(const SoftPoint& pt, const ParameterSet& params, const SoftSet::Subset& universe) {
  auto i = params.index_of(pt.param);
  detail::require(i.has_value(), "soft point parameter '" + pt.param + "' not in parameter set");
  std::vector<SoftSet::Subset> assignment(params.size());
  assignment[*i].insert(pt.element);
  return SoftSet(params, universe, std::move(assignment));
}

/// Decomposes a soft set into its soft points, ordered by parameter order and
/// then element order. Empty iff the soft set is null.
inline std::vector<SoftPoint> ss_to_points(const SoftSet& s) {
  std::vector<SoftPoint> pts;
  for (std::size_t i = 0; i < s.params().size(); ++i) {
    for (const auto& x : s.assignment()[i]) pts.push_back({x, s.params()[i]});
  }
  return pts;
}

inline SoftSet ss_from_points(const std::vector<SoftPoint>& pts, const ParameterSet& params,
                              const SoftSet::Subset& universe) {
  std::vector<SoftSet::Subset> assignment(params.size());
  for (const auto& pt : pts) {
    auto i = params.index_of(pt.param);
    detail::require(i.has_value(), "soft point parameter '" + pt.param + "' not in parameter set");
    detail::require(universe.count(pt.element) == 1,
                    "soft point element '" + pt.element + "' not in universe");
    assignment[*i].insert(pt.element);
  }
  return SoftSet(params, universe, std::move(assignment));
}

}  // namespace softnls
