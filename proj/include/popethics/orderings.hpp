#pragma once

// Social welfare orderings over variable-population profiles. Every ordering
// answers the same question through compare(): is the left profile better,
// worse, or indifferent to the right one?

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "profile.hpp"

namespace popethics {

/// Per-person transform g: continuous, strictly increasing, concave, g(0) = 0.
enum class GKind { identity, exp_bounded };
/// Bounded strictly increasing transform applied to the utilitarian sum.
enum class FBoundedKind { arctan };
/// Strictly increasing concave population dampening f(n) for the
/// number-dampened positive part. `saturating` is f(n) = n / (n + 1).
enum class FDampenKind { saturating, sqrt, identity };

struct SwoConfig {
  GKind g = GKind::identity;
  FBoundedKind f_bounded = FBoundedKind::arctan;
  FDampenKind f_dampen = FDampenKind::saturating;
  double critical_level = 0.0;
  /// Value differences at or below this are indifference.
  double tolerance = 1e-9;

  void validate() const {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
      throw std::invalid_argument("tolerance must be a positive finite real");
    if (!std::isfinite(critical_level)) throw std::invalid_argument("critical level must be finite");
  }
};

enum class SwoId { Total, Average, Clgu, Theorem2, Theorem3, LeximinExtended, Theorem7, ModifiedTheorem2 };

inline constexpr SwoId kAllSwos[] = {SwoId::Total,    SwoId::Average,         SwoId::Clgu,
                                     SwoId::Theorem2, SwoId::Theorem3,        SwoId::LeximinExtended,
                                     SwoId::Theorem7, SwoId::ModifiedTheorem2};

constexpr std::string_view to_string(SwoId id) {
  switch (id) {
    case SwoId::Total: return "total";
    case SwoId::Average: return "average";
    case SwoId::Clgu: return "clgu";
    case SwoId::Theorem2: return "theorem2";
    case SwoId::Theorem3: return "theorem3";
    case SwoId::LeximinExtended: return "leximin";
    case SwoId::Theorem7: return "theorem7";
    case SwoId::ModifiedTheorem2: return "modified-theorem2";
  }
  throw std::invalid_argument("unknown SWO id");
}

inline std::optional<SwoId> parse_swo_id(std::string_view name) {
  for (SwoId id : kAllSwos) {
    if (name == to_string(id)) return id;
  }
  if (name == "leximin-extended") return SwoId::LeximinExtended;
  return std::nullopt;
}

constexpr std::string_view to_string(GKind g) { return g == GKind::identity ? "identity" : "exp_bounded"; }

constexpr std::string_view to_string(FDampenKind f) {
  switch (f) {
    case FDampenKind::saturating: return "saturating";
    case FDampenKind::sqrt: return "sqrt";
    case FDampenKind::identity: return "identity";
  }
  return "?";
}

inline std::optional<GKind> parse_g_kind(std::string_view s) {
  if (s == "identity") return GKind::identity;
  if (s == "exp_bounded" || s == "exp") return GKind::exp_bounded;
  return std::nullopt;
}

inline std::optional<FDampenKind> parse_f_dampen_kind(std::string_view s) {
  if (s == "saturating") return FDampenKind::saturating;
  if (s == "sqrt") return FDampenKind::sqrt;
  if (s == "identity") return FDampenKind::identity;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Transforms

inline double apply_g(const SwoConfig& cfg, double x) {
  switch (cfg.g) {
    case GKind::identity: return x;
    case GKind::exp_bounded: return -std::expm1(-x);
  }
  return x;
}

inline double apply_f_bounded(const SwoConfig&, double x) { return std::atan(x); }

/// Least upper bound of the bounded transform.
inline double f_bounded_supremum(const SwoConfig&) { return std::numbers::pi / 2; }

inline double apply_f_dampen(const SwoConfig& cfg, std::size_t n) {
  const double x = static_cast<double>(n);
  switch (cfg.f_dampen) {
    case FDampenKind::saturating: return x / (x + 1.0);
    case FDampenKind::sqrt: return std::sqrt(x);
    case FDampenKind::identity: return x;
  }
  return x;
}

inline std::optional<double> f_dampen_supremum(const SwoConfig& cfg) {
  if (cfg.f_dampen == FDampenKind::saturating) return 1.0;
  return std::nullopt;
}

/// Verdict of value a against value b with the configured tie band.
inline Verdict compare_values(double a, double b, double tolerance) {
  if (std::fabs(a - b) <= tolerance) return Verdict::Indifferent;
  return a > b ? Verdict::Better : Verdict::Worse;
}

// ---------------------------------------------------------------------------
// Classical baselines

enum class BaselineKind { Total, Average, Clgu };

inline double sum_g(const Profile& p, const SwoConfig& cfg) {
  double acc = 0.0;
  for (double x : p) acc += apply_g(cfg, x);
  return acc;
}

/// Sum of g(u_i) - g(c) with c the configured critical level.
inline double clgu_value(const Profile& p, const SwoConfig& cfg) {
  const double gc = apply_g(cfg, cfg.critical_level);
  double acc = 0.0;
  for (double x : p) acc += apply_g(cfg, x) - gc;
  return acc;
}

inline double baseline_value(BaselineKind kind, const Profile& p, const SwoConfig& cfg) {
  switch (kind) {
    case BaselineKind::Total: return sum(p);
    case BaselineKind::Average: return mean(p);
    case BaselineKind::Clgu: return clgu_value(p, cfg);
  }
  throw std::invalid_argument("unknown baseline");
}

inline Verdict compare_baseline(BaselineKind kind, const Profile& u, const Profile& v, const SwoConfig& cfg) {
  return compare_values(baseline_value(kind, u, cfg), baseline_value(kind, v, cfg), cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Bounded utilitarian sum plus geometric mean of the positive parts.

inline double value_theorem2(const Profile& u, const SwoConfig& cfg) {
  return apply_f_bounded(cfg, sum_g(u, cfg)) + geomean_positive_part(u);
}

/// Arctan of the utilitarian sum plus the positive-part geometric mean minus
/// the |negative-part| geometric mean. At most one of the two means is nonzero.
inline double value_modified_theorem2(const Profile& u, const SwoConfig& cfg) {
  return std::atan(sum_g(u, cfg)) + geomean_positive_part(u) - geomean_negative_part_abs(u);
}

// ---------------------------------------------------------------------------
// Negative-part utilitarianism, then number-dampened positive part.

struct Theorem3Keys {
  double non_positive_sum;  // sum of g over levels <= 0; larger is better
  double dampened_positive;  // f(n++)/n++ * sum of g over levels > 0
};

inline Theorem3Keys theorem3_keys(const Profile& u, const SwoConfig& cfg) {
  double neg = 0.0;
  double pos = 0.0;
  std::size_t n_pos = 0;
  for (double x : u) {
    if (x <= 0.0) {
      neg += apply_g(cfg, x);
    } else {
      pos += apply_g(cfg, x);
      ++n_pos;
    }
  }
  // No positive levels: the dampened part of an empty sum is 0.
  const double dampened = n_pos == 0 ? 0.0 : apply_f_dampen(cfg, n_pos) / static_cast<double>(n_pos) * pos;
  return {neg, dampened};
}

inline Verdict compare_theorem3(const Profile& u, const Profile& v, const SwoConfig& cfg) {
  const Theorem3Keys a = theorem3_keys(u, cfg);
  const Theorem3Keys b = theorem3_keys(v, cfg);
  const Verdict first = compare_values(a.non_positive_sum, b.non_positive_sum, cfg.tolerance);
  if (first != Verdict::Indifferent) return first;
  return compare_values(a.dampened_positive, b.dampened_positive, cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Extended leximin: pad the smaller population with copies of its own best
// level, then compare ascending sorts from the worst-off up. Exact, no band.

namespace detail {

inline std::vector<double> padded_sorted(const Profile& p, std::size_t length) {
  std::vector<double> out(p.begin(), p.end());
  out.resize(length, p.max());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Verdict compare_leximin_extended(const Profile& u, const Profile& v) {
  const std::size_t length = std::max(u.size(), v.size());
  const std::vector<double> a = detail::padded_sorted(u, length);
  const std::vector<double> b = detail::padded_sorted(v, length);
  for (std::size_t i = 0; i < length; ++i) {
    if (a[i] > b[i]) return Verdict::Better;
    if (a[i] < b[i]) return Verdict::Worse;
  }
  return Verdict::Indifferent;
}

// ---------------------------------------------------------------------------
// Smaller population strictly better; equal populations by CLGU.

inline Verdict compare_theorem7(const Profile& u, const Profile& v, const SwoConfig& cfg) {
  if (u.size() < v.size()) return Verdict::Better;
  if (u.size() > v.size()) return Verdict::Worse;
  return compare_values(clgu_value(u, cfg), clgu_value(v, cfg), cfg.tolerance);
}

/// Two-variable reduced form: arctan of the CLGU sum minus (n - 1) pi.
inline double value_theorem7_reduced(const Profile& u, const SwoConfig& cfg) {
  return std::atan(clgu_value(u, cfg)) - static_cast<double>(u.size() - 1) * std::numbers::pi;
}

// ---------------------------------------------------------------------------
// Registry

/// Orderings decided by comparing one real value per profile.
constexpr bool is_value_based(SwoId id) {
  switch (id) {
    case SwoId::Total:
    case SwoId::Average:
    case SwoId::Clgu:
    case SwoId::Theorem2:
    case SwoId::ModifiedTheorem2: return true;
    default: return false;
  }
}

/// The value whose comparison decides `id`, when there is one. Theorem 7 is
/// reported through its reduced form, which orders identically up to ties.
inline std::optional<double> value_of(SwoId id, const Profile& u, const SwoConfig& cfg) {
  switch (id) {
    case SwoId::Total: return baseline_value(BaselineKind::Total, u, cfg);
    case SwoId::Average: return baseline_value(BaselineKind::Average, u, cfg);
    case SwoId::Clgu: return baseline_value(BaselineKind::Clgu, u, cfg);
    case SwoId::Theorem2: return value_theorem2(u, cfg);
    case SwoId::ModifiedTheorem2: return value_modified_theorem2(u, cfg);
    case SwoId::Theorem7: return value_theorem7_reduced(u, cfg);
    default: return std::nullopt;
  }
}

inline Verdict compare(SwoId id, const Profile& u, const Profile& v, const SwoConfig& cfg) {
  switch (id) {
    case SwoId::Total: return compare_baseline(BaselineKind::Total, u, v, cfg);
    case SwoId::Average: return compare_baseline(BaselineKind::Average, u, v, cfg);
    case SwoId::Clgu: return compare_baseline(BaselineKind::Clgu, u, v, cfg);
    case SwoId::Theorem2: return compare_values(value_theorem2(u, cfg), value_theorem2(v, cfg), cfg.tolerance);
    case SwoId::Theorem3: return compare_theorem3(u, v, cfg);
    case SwoId::LeximinExtended: return compare_leximin_extended(u, v);
    case SwoId::Theorem7: return compare_theorem7(u, v, cfg);
    case SwoId::ModifiedTheorem2:
      return compare_values(value_modified_theorem2(u, cfg), value_modified_theorem2(v, cfg), cfg.tolerance);
  }
  throw std::invalid_argument("unknown SWO id");
}

}  // namespace popethics
