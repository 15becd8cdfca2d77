#pragma once

// Falsification probes for the population axioms.
//
// Universal axioms ("for all profiles ...") are checked by drawing seeded
// random instances of their quantified variables and evaluating the
// implication through compare(). Existential conditions (repugnant-conclusion
// avoidance, critical levels, monotonicity for zero addition) are checked by
// explicit search and bisection, with closed-form bounds where an ordering
// has them. A Pass is never a proof; a Fail always comes with a witness that
// replays through compare().

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orderings.hpp"
#include "probe.hpp"
#include "profile.hpp"
#include "sampling.hpp"

namespace popethics {

enum class AxiomId {
  Anonymity,
  StrongPareto,
  WeakPareto,
  MinimalIncreasing,
  PigouDalton,
  MinimalEquity,
  AvoidSadistic,
  AvoidWeakSadistic,
  StrongAvoidWeakSadistic,
  AdditionOfIndifferent,
  PositiveResponsiveness,
  UtilityIndependence,
};

inline constexpr AxiomId kAllAxioms[] = {
    AxiomId::Anonymity,         AxiomId::StrongPareto,           AxiomId::WeakPareto,
    AxiomId::MinimalIncreasing, AxiomId::PigouDalton,            AxiomId::MinimalEquity,
    AxiomId::AvoidSadistic,     AxiomId::AvoidWeakSadistic,      AxiomId::StrongAvoidWeakSadistic,
    AxiomId::AdditionOfIndifferent, AxiomId::PositiveResponsiveness, AxiomId::UtilityIndependence,
};

constexpr std::string_view to_string(AxiomId a) {
  switch (a) {
    case AxiomId::Anonymity: return "Anonymity";
    case AxiomId::StrongPareto: return "StrongPareto";
    case AxiomId::WeakPareto: return "WeakPareto";
    case AxiomId::MinimalIncreasing: return "MinimalIncreasing";
    case AxiomId::PigouDalton: return "PigouDalton";
    case AxiomId::MinimalEquity: return "MinimalEquity";
    case AxiomId::AvoidSadistic: return "AvoidSadistic";
    case AxiomId::AvoidWeakSadistic: return "AvoidWeakSadistic";
    case AxiomId::StrongAvoidWeakSadistic: return "StrongAvoidWeakSadistic";
    case AxiomId::AdditionOfIndifferent: return "AdditionOfIndifferent";
    case AxiomId::PositiveResponsiveness: return "PositiveResponsiveness";
    case AxiomId::UtilityIndependence: return "UtilityIndependence";
  }
  throw std::invalid_argument("unknown axiom id");
}

namespace detail {

inline std::string real_text(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Strict perturbations are at least this fraction of the sampling range, so
/// "strictly better" is tested well above the indifference band.
inline constexpr double kStrictGapFraction = 1e-3;

}  // namespace detail

// ---------------------------------------------------------------------------
// Universal axioms

namespace detail {

// A profile that stands in some designed relation to `v`: unrelated, a
// permutation, an equal-sum transfer, v padded with its best level, or the
// equal distribution of v's mean. The designed partners make indifference
// hypotheses non-vacuous.
inline Profile partner_of(const Profile& v, Sampler& s) {
  switch (s.index(0, 5)) {
    case 0:
    case 1: return s.profile();
    case 2: return s.permuted(v);
    case 3: {
      if (v.size() < 2) return s.profile();
      std::vector<double> out(v.begin(), v.end());
      const std::size_t i = s.index(0, out.size() - 1);
      std::size_t j = s.index(0, out.size() - 2);
      if (j >= i) ++j;
      const double amount = s.uniform(-1.0, 1.0) * s.config().range * 0.5;
      out[i] += amount;
      out[j] -= amount;
      return Profile(std::move(out));
    }
    case 4: return concat(v, replicate(s.index(1, 3), v.max()));
    default: return replicate(s.index(1, s.config().max_pop), mean(v));
  }
}

// The introductory sadistic triple: ten people at 10, then either a hundred
// people at 1 or a single person at -1.
struct Triple {
  Profile u, v, s;
};

inline Triple intro_sadistic_triple() { return {replicate(10, 10.0), replicate(100, 1.0), Profile{-1.0}}; }

inline bool seeds_with_intro_triple(AxiomId a) {
  switch (a) {
    case AxiomId::AvoidSadistic:
    case AxiomId::AvoidWeakSadistic:
    case AxiomId::StrongAvoidWeakSadistic:
    case AxiomId::PositiveResponsiveness:
    case AxiomId::UtilityIndependence: return true;
    default: return false;
  }
}

struct InstanceOutcome {
  bool applicable = true;
  std::optional<Witness> violation;
};

// Evaluates the implication for one (u, v, s) triple of an adding-profiles
// axiom.
inline InstanceOutcome check_adding_triple(AxiomId axiom, SwoId swo, const SwoConfig& cfg, const Profile& u,
                                           const Profile& v, const Profile& s) {
  InstanceOutcome out;
  Witness w;
  w.add_profile("u", u).add_profile("v", v).add_profile("s", s);
  const Profile uv = concat(u, v);
  const Profile us = concat(u, s);

  if (axiom == AxiomId::AvoidSadistic) {
    if (w.observe(swo, cfg, "(u,v) vs (u,s)", uv, us) == Verdict::Worse) out.violation = std::move(w);
    return out;
  }

  const Verdict base = w.observe(swo, cfg, "v vs s", v, s);
  const Verdict added = w.observe(swo, cfg, "(u,v) vs (u,s)", uv, us);
  bool violated = false;
  switch (axiom) {
    case AxiomId::AvoidWeakSadistic:
      out.applicable = base == Verdict::Better;
      violated = out.applicable && added == Verdict::Worse;
      break;
    case AxiomId::StrongAvoidWeakSadistic:
      // v ~ s gives both v >= s and s >= v, hence (u,v) ~ (u,s).
      violated = (base == Verdict::Better && added != Verdict::Better) ||
                 (base == Verdict::Indifferent && added != Verdict::Indifferent) ||
                 (base == Verdict::Worse && added != Verdict::Worse);
      break;
    case AxiomId::AdditionOfIndifferent:
      out.applicable = base == Verdict::Indifferent;
      violated = out.applicable && added != Verdict::Indifferent;
      break;
    case AxiomId::PositiveResponsiveness:
      out.applicable = base == Verdict::Better;
      violated = out.applicable && added != Verdict::Better;
      break;
    case AxiomId::UtilityIndependence: violated = base != added; break;
    default: throw std::logic_error("not an adding-profiles axiom");
  }
  if (violated) out.violation = std::move(w);
  return out;
}

inline InstanceOutcome draw_instance(AxiomId axiom, SwoId swo, const SwoConfig& cfg, Sampler& s) {
  InstanceOutcome out;
  const double gap = s.config().range * kStrictGapFraction;
  auto violated_if = [&](bool bad, Witness w) {
    if (bad) out.violation = std::move(w);
    return out;
  };

  switch (axiom) {
    case AxiomId::Anonymity: {
      const Profile u = s.profile();
      const Profile p = s.permuted(u);
      Witness w;
      w.add_profile("u", u).add_profile("permuted", p);
      return violated_if(w.observe(swo, cfg, "u vs permuted u", u, p) != Verdict::Indifferent, std::move(w));
    }
    case AxiomId::StrongPareto:
    case AxiomId::WeakPareto: {
      const Profile u = s.profile();
      std::vector<double> raised(u.begin(), u.end());
      if (axiom == AxiomId::WeakPareto) {
        for (double& x : raised) x += s.uniform(gap, s.config().range);
      } else {
        for (double& x : raised) {
          if (s.coin()) x += s.uniform(0.0, s.config().range);
        }
        raised[s.index(0, raised.size() - 1)] += s.uniform(gap, s.config().range);
      }
      const Profile v(std::move(raised));
      Witness w;
      w.add_profile("u", u).add_profile("v", v);
      return violated_if(w.observe(swo, cfg, "v vs u (v dominates u)", v, u) != Verdict::Better, std::move(w));
    }
    case AxiomId::MinimalIncreasing: {
      const double b = s.level();
      const double a = b + s.uniform(gap, s.config().range);
      const std::size_t n = s.population();
      const Profile hi = replicate(n, a);
      const Profile lo = replicate(n, b);
      Witness w;
      w.add_profile("n*a", hi).add_profile("n*b", lo);
      w.values["a"] = a;
      w.values["b"] = b;
      return violated_if(w.observe(swo, cfg, "n*a vs n*b", hi, lo) != Verdict::Better, std::move(w));
    }
    case AxiomId::PigouDalton: {
      const Profile v = s.profile(s.index(2, std::max<std::size_t>(2, s.config().max_pop)));
      std::size_t i = s.index(0, v.size() - 1);
      std::size_t j = s.index(0, v.size() - 2);
      if (j >= i) ++j;
      if (v[i] < v[j]) std::swap(i, j);
      if (v[i] == v[j]) {
        out.applicable = false;
        return out;
      }
      // Rank-preserving: the recipient never overtakes the donor.
      const double eps = (v[i] - v[j]) / 2.0 * s.unit_open_left();
      std::vector<double> moved(v.begin(), v.end());
      moved[i] -= eps;
      moved[j] += eps;
      const Profile u(std::move(moved));
      Witness w;
      w.add_profile("before", v).add_profile("after", u);
      w.values["epsilon"] = eps;
      return violated_if(w.observe(swo, cfg, "after transfer vs before", u, v) == Verdict::Worse, std::move(w));
    }
    case AxiomId::MinimalEquity: {
      const Profile u = s.profile();
      const Profile equal = replicate(u.size(), mean(u));
      Witness w;
      w.add_profile("u", u).add_profile("equal", equal);
      return violated_if(w.observe(swo, cfg, "n*mean(u) vs u", equal, u) == Verdict::Worse, std::move(w));
    }
    case AxiomId::AvoidSadistic:
      return check_adding_triple(axiom, swo, cfg, s.profile(), s.positive_profile(), s.negative_profile());
    case AxiomId::AvoidWeakSadistic:
    case AxiomId::PositiveResponsiveness: {
      const Profile u = s.profile();
      Profile v = s.profile();
      Profile t = partner_of(v, s);
      // Orient the pair so the hypothesis v > s holds whenever it can.
      if (compare(swo, v, t, cfg) == Verdict::Worse) std::swap(v, t);
      return check_adding_triple(axiom, swo, cfg, u, v, t);
    }
    case AxiomId::StrongAvoidWeakSadistic:
    case AxiomId::AdditionOfIndifferent:
    case AxiomId::UtilityIndependence: {
      const Profile u = s.profile();
      const Profile v = s.profile();
      const Profile t = partner_of(v, s);
      return check_adding_triple(axiom, swo, cfg, u, v, t);
    }
  }
  throw std::invalid_argument("unknown axiom id");
}

}  // namespace detail

/// Draws `sampler.samples` random instances of the axiom and returns the first
/// violation found. Deterministic in the sampler seed.
inline ProbeResult check_universal_axiom(AxiomId axiom, SwoId swo, const SwoConfig& cfg,
                                         const SamplerConfig& sampler) {
  cfg.validate();
  sampler.validate();
  Sampler s(sampler);
  std::size_t applicable = 0;
  std::size_t run = 0;

  if (detail::seeds_with_intro_triple(axiom)) {
    const auto t = detail::intro_sadistic_triple();
    auto outcome = detail::check_adding_triple(axiom, swo, cfg, t.u, t.v, t.s);
    ++run;
    applicable += outcome.applicable ? 1 : 0;
    if (outcome.violation) return ProbeResult::fail(run, std::move(*outcome.violation), "seed instance");
  }

  while (run < sampler.samples) {
    auto outcome = detail::draw_instance(axiom, swo, cfg, s);
    ++run;
    applicable += outcome.applicable ? 1 : 0;
    if (outcome.violation) {
      return ProbeResult::fail(run, std::move(*outcome.violation), "violation at instance " + std::to_string(run));
    }
  }
  return ProbeResult::pass(run, std::to_string(applicable) + " of " + std::to_string(run) +
                                    " instances satisfied the hypothesis");
}

// ---------------------------------------------------------------------------
// Closed-form hooks

namespace detail {

// Least upper bound of the ordering's value on m*eps over all m, when the
// value is bounded along that sequence.
inline std::optional<double> replicated_value_supremum(SwoId swo, const SwoConfig& cfg, double eps) {
  if (!(apply_g(cfg, eps) > 0.0)) return std::nullopt;
  if (swo == SwoId::Theorem2 || swo == SwoId::ModifiedTheorem2) return f_bounded_supremum(cfg) + eps;
  return std::nullopt;
}

// True when no m*eps can be strictly better than u, shown by a bound.
inline bool bound_rules_out_replicated(SwoId swo, const SwoConfig& cfg, const Profile& u, double eps,
                                       std::string& note) {
  if (auto sup = replicated_value_supremum(swo, cfg, eps)) {
    const double vu = *value_of(swo, u, cfg);
    if (vu >= *sup) {
      note = "value(u) = " + real_text(vu) + " >= sup_m value(m*eps) = " + real_text(*sup);
      return true;
    }
    return false;
  }
  if (swo == SwoId::Theorem3 && u.all_positive() && eps > 0.0) {
    if (auto fsup = f_dampen_supremum(cfg)) {
      const double bound = *fsup * apply_g(cfg, eps);
      const double key = theorem3_keys(u, cfg).dampened_positive;
      if (key >= bound) {
        note = "dampened key(u) = " + real_text(key) + " >= sup_m f(m) g(eps) = " + real_text(bound);
        return true;
      }
    }
  }
  return false;
}

// For orderings whose value on m*eps grows without bound, the least m at
// which m*eps overtakes u by more than the tie band.
inline std::optional<double> replicated_escape_m(SwoId swo, const SwoConfig& cfg, const Profile& u, double eps) {
  const double tau = cfg.tolerance;
  switch (swo) {
    case SwoId::Total:
      if (eps > 0.0) return std::floor((sum(u) + tau) / eps) + 1.0;
      return std::nullopt;
    case SwoId::Clgu: {
      const double per = apply_g(cfg, eps) - apply_g(cfg, cfg.critical_level);
      if (per > 0.0) return std::max(1.0, std::floor((clgu_value(u, cfg) + tau) / per) + 1.0);
      return std::nullopt;
    }
    case SwoId::Theorem3: {
      if (!u.all_positive() || !(eps > 0.0)) return std::nullopt;
      const double ge = apply_g(cfg, eps);
      const double target = (theorem3_keys(u, cfg).dampened_positive + tau) / ge;
      if (cfg.f_dampen == FDampenKind::sqrt) return std::floor(target * target) + 1.0;
      if (cfg.f_dampen == FDampenKind::identity) return std::floor(target) + 1.0;
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

inline constexpr double kMaterializeCap = 2e7;

// Smallest m <= m_max with m*eps strictly better than u, scanning upward;
// past m_max, a closed-form escape point is tried and verified.
inline std::optional<std::size_t> first_replicated_win(SwoId swo, const SwoConfig& cfg, const Profile& u, double eps,
                                                       std::size_t m_max, bool use_escape) {
  std::vector<double> levels;
  for (std::size_t m = 1; m <= m_max; ++m) {
    levels.push_back(eps);
    if (compare(swo, Profile(levels), u, cfg) == Verdict::Better) return m;
  }
  if (!use_escape) return std::nullopt;
  if (auto m = replicated_escape_m(swo, cfg, u, eps); m && *m > static_cast<double>(m_max) && *m <= kMaterializeCap) {
    const auto mm = static_cast<std::size_t>(*m);
    if (compare(swo, replicate(mm, eps), u, cfg) == Verdict::Better) return mm;
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Avoidance of the repugnant conclusion: u >= m*eps for every m.

inline ProbeResult check_avoid_repugnant(SwoId swo, const SwoConfig& cfg, const Profile& candidate_u, double eps,
                                         std::size_t m_max) {
  cfg.validate();
  if (!candidate_u.all_positive()) throw std::invalid_argument("repugnant probe: candidate must be all-positive");
  if (!(eps > 0.0)) throw std::invalid_argument("repugnant probe: epsilon must be positive");
  if (m_max < 1) throw std::invalid_argument("repugnant probe: m_max must be positive");

  std::string bound_note;
  const bool certified = detail::bound_rules_out_replicated(swo, cfg, candidate_u, eps, bound_note);

  if (auto m = detail::first_replicated_win(swo, cfg, candidate_u, eps, m_max, !certified)) {
    Witness w;
    const Profile crowd = replicate(*m, eps);
    w.add_profile("u", candidate_u).add_profile("m*eps", crowd);
    w.values["m"] = static_cast<double>(*m);
    w.values["epsilon"] = eps;
    w.observe(swo, cfg, "m*eps vs u", crowd, candidate_u);
    return ProbeResult::fail(std::min(*m, m_max), std::move(w),
                             "m*eps beats u at m = " + std::to_string(*m));
  }
  if (certified) return ProbeResult::pass(m_max, "certified: " + bound_note, true);
  return ProbeResult::pass(m_max, "u >= m*eps for every m <= " + std::to_string(m_max));
}

// ---------------------------------------------------------------------------
// Avoidance of the weak repugnant conclusion: no level c > 0 such that some
// crowd at c beats every all-positive profile.

inline ProbeResult check_avoid_weak_repugnant(SwoId swo, const SwoConfig& cfg, const std::vector<double>& c_grid,
                                              std::size_t m_max, const std::vector<Profile>& u_candidates) {
  cfg.validate();
  if (c_grid.empty()) throw std::invalid_argument("weak repugnant probe: empty level grid");
  for (double c : c_grid) {
    if (!(c > 0.0)) throw std::invalid_argument("weak repugnant probe: levels must be positive");
  }
  for (const auto& u : u_candidates) {
    if (!u.all_positive()) throw std::invalid_argument("weak repugnant probe: candidates must be all-positive");
  }

  std::size_t checks = 0;
  bool all_certified = true;
  std::string defeats;
  for (double c : c_grid) {
    std::vector<Profile> candidates = u_candidates;
    // A single person just above c is always tried.
    candidates.push_back(Profile{c + 1.0});

    Witness crowd_wins;
    crowd_wins.values["c"] = c;
    std::optional<std::string> defeater;
    bool defeat_certified = false;
    for (std::size_t k = 0; k < candidates.size() && !defeater; ++k) {
      const Profile& u = candidates[k];
      ++checks;
      std::string note;
      if (detail::bound_rules_out_replicated(swo, cfg, u, c, note)) {
        defeater = format_profile(u);
        defeat_certified = true;
        break;
      }
      if (auto m = detail::first_replicated_win(swo, cfg, u, c, m_max, true)) {
        const std::string tag = std::to_string(k);
        const Profile crowd = replicate(*m, c);
        crowd_wins.add_profile("u" + tag, u);
        crowd_wins.values["m" + tag] = static_cast<double>(*m);
        crowd_wins.observe(swo, cfg, "m*c vs u" + tag, crowd, u);
      } else {
        defeater = format_profile(u);
      }
    }
    if (!defeater) {
      return ProbeResult::fail(checks, std::move(crowd_wins),
                               "c = " + detail::real_text(c) + " yields a crowd beating every candidate");
    }
    all_certified = all_certified && defeat_certified;
    if (!defeats.empty()) defeats += "; ";
    defeats += "c=" + detail::real_text(c) + " defeated by (" + *defeater + ")" + (defeat_certified ? " [bound]" : "");
  }
  return ProbeResult::pass(checks, defeats, all_certified);
}

// ---------------------------------------------------------------------------
// Critical levels: u ~ (u, c).

enum class CriticalLevelOutcome { Found, NoSignChange, DiscontinuousFlip };

struct CriticalLevelSearch {
  std::optional<double> level;
  CriticalLevelOutcome outcome = CriticalLevelOutcome::NoSignChange;

  std::string reason() const {
    switch (outcome) {
      case CriticalLevelOutcome::Found: return "found";
      case CriticalLevelOutcome::NoSignChange: return "no sign change in bracket";
      case CriticalLevelOutcome::DiscontinuousFlip: return "discontinuous flip (no indifferent point)";
    }
    return {};
  }
};

namespace detail {

inline constexpr int kMaxBisections = 2400;

// Shortest decimal inside [lo, hi].
inline double simplest_in(double lo, double hi) {
  if (lo == hi) return lo == 0.0 ? 0.0 : lo;
  const double mid = lo + (hi - lo) / 2.0;
  double scale = 1.0;
  for (int digits = 0; digits <= 17; ++digits, scale *= 10.0) {
    const double r = std::round(mid * scale) / scale;
    if (r >= lo && r <= hi) return r == 0.0 ? 0.0 : r;
  }
  return mid;
}

// Boundary between a point with a strict verdict and a point that is
// indifferent; returns the indifferent side once the bracket is below tol.
template <typename VerdictAt>
double indifference_edge(VerdictAt verdict_at, double strict_x, double indifferent_x, double tol) {
  for (int i = 0; i < kMaxBisections && std::fabs(indifferent_x - strict_x) > tol; ++i) {
    const double mid = strict_x + (indifferent_x - strict_x) / 2.0;
    if (mid == strict_x || mid == indifferent_x) break;
    if (verdict_at(mid) == Verdict::Indifferent) {
      indifferent_x = mid;
    } else {
      strict_x = mid;
    }
  }
  return indifferent_x;
}

}  // namespace detail

/// Bisects c over [lo, hi] on the verdict of (u, c) against u. Returns the
/// simplest decimal inside the located indifference band, or nothing when
/// the verdict never changes or changes without passing through
/// indifference.
inline CriticalLevelSearch find_critical_level(SwoId swo, const SwoConfig& cfg, const Profile& u, double lo, double hi,
                                               double tol) {
  cfg.validate();
  if (!(lo < hi)) throw std::invalid_argument("critical level search: lo must be below hi");
  if (!(tol > 0.0)) throw std::invalid_argument("critical level search: tol must be positive");
  auto verdict_at = [&](double c) { return compare(swo, concat(u, Profile{c}), u, cfg); };

  const Verdict v_lo = verdict_at(lo);
  const Verdict v_hi = verdict_at(hi);
  std::optional<double> hit;
  if (v_lo == Verdict::Indifferent) {
    hit = lo;
  } else if (v_hi == Verdict::Indifferent) {
    hit = hi;
  } else if (v_lo == v_hi) {
    return {std::nullopt, CriticalLevelOutcome::NoSignChange};
  } else {
    double a = lo;
    double b = hi;
    for (int i = 0; i < detail::kMaxBisections; ++i) {
      const double mid = a + (b - a) / 2.0;
      if (mid <= a || mid >= b) break;
      const Verdict vm = verdict_at(mid);
      if (vm == Verdict::Indifferent) {
        hit = mid;
        break;
      }
      (vm == v_lo ? a : b) = mid;
    }
  }
  if (!hit) return {std::nullopt, CriticalLevelOutcome::DiscontinuousFlip};

  const double left = v_lo == Verdict::Indifferent ? lo : detail::indifference_edge(verdict_at, lo, *hit, tol / 4);
  const double right = v_hi == Verdict::Indifferent ? hi : detail::indifference_edge(verdict_at, hi, *hit, tol / 4);
  return {detail::simplest_in(left, right), CriticalLevelOutcome::Found};
}

// ---------------------------------------------------------------------------
// Extended continuity, probed along a ray through profile space.

namespace detail {

inline Profile ray_point(const Profile& base, const Profile& dir, double t) {
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] + t * dir[i];
  return Profile(std::move(out));
}

}  // namespace detail

/// Bisects t in [0, 1] on the verdict of base + t*dir against u. A crossing
/// that passes through indifference is continuous (Pass). A crossing that
/// jumps from one strict verdict straight to another, with a strict verdict
/// at the limit point, means a contour set is not closed (Fail).
inline ProbeResult probe_extended_continuity(SwoId swo, const SwoConfig& cfg, const Profile& u,
                                             const Profile& ray_base, const Profile& ray_dir, double tol) {
  cfg.validate();
  if (ray_base.size() != ray_dir.size()) throw std::invalid_argument("continuity probe: ray dimensions differ");
  if (!(tol > 0.0)) throw std::invalid_argument("continuity probe: tol must be positive");
  auto verdict_at = [&](double t) { return compare(swo, detail::ray_point(ray_base, ray_dir, t), u, cfg); };

  double a = 0.0;
  double b = 1.0;
  const Verdict v_a = verdict_at(a);
  const Verdict v_b = verdict_at(b);
  std::size_t evaluations = 2;
  if (v_a == v_b) return ProbeResult::inconclusive(evaluations, "no verdict change along the ray");

  // Endpoint age: the endpoint that stopped moving first is the limit the
  // other one approaches.
  int a_moved = 0;
  int b_moved = 0;
  bool crossed_indifference = v_a == Verdict::Indifferent || v_b == Verdict::Indifferent;
  Verdict va = v_a;
  Verdict vb = v_b;
  for (int i = 1; i <= detail::kMaxBisections; ++i) {
    const double mid = a + (b - a) / 2.0;
    if (mid <= a || mid >= b) break;
    const Verdict vm = verdict_at(mid);
    ++evaluations;
    if (vm == Verdict::Indifferent && !crossed_indifference) {
      return ProbeResult::pass(evaluations, "verdict passes through indifference at t = " + detail::real_text(mid));
    }
    if (vm == v_a) {
      a = mid;
      va = vm;
      a_moved = i;
    } else {
      b = mid;
      vb = vm;
      b_moved = i;
    }
  }

  // Bisection runs to adjacent doubles so a steep continuous crossing is not
  // mistaken for a jump; tol only bounds how well the flip must be located.
  if (b - a > tol) return ProbeResult::inconclusive(evaluations, "flip not located within tol");

  // An edge of the tolerance band meets indifference on one side; only a
  // jump between opposite strict verdicts breaks closedness.
  if (va == Verdict::Indifferent || vb == Verdict::Indifferent) {
    return ProbeResult::pass(evaluations, "verdict meets indifference at t = " + detail::real_text(a));
  }
  // The tolerance band is inclusive, so a boundary created by the band
  // belongs to its tie side: an endpoint whose verdict changes under a
  // slightly wider band lies just outside it and is the approaching point.
  SwoConfig wider = cfg;
  wider.tolerance = cfg.tolerance * (1.0 + 1e-3);
  const bool a_on_edge = compare(swo, detail::ray_point(ray_base, ray_dir, a), u, wider) != va;
  const bool b_on_edge = compare(swo, detail::ray_point(ray_base, ray_dir, b), u, wider) != vb;
  evaluations += 2;
  const bool limit_is_b = a_on_edge != b_on_edge ? a_on_edge
                                                 : b_moved < a_moved || (b_moved == a_moved && b == 1.0);
  const double t_limit = limit_is_b ? b : a;
  const double t_near = limit_is_b ? a : b;
  const Verdict v_limit = limit_is_b ? vb : va;

  // A steep continuous value (a cube root near zero, say) can still step
  // over the tolerance band between adjacent representable points. A real
  // jump keeps most of its size at one step; a steep slope does not.
  const double step = t_near - t_limit;
  if (auto at_limit = value_of(swo, detail::ray_point(ray_base, ray_dir, t_limit), cfg)) {
    const double one = std::fabs(*value_of(swo, detail::ray_point(ray_base, ray_dir, t_near), cfg) - *at_limit);
    const double wide =
        std::fabs(*value_of(swo, detail::ray_point(ray_base, ray_dir, t_limit + 1024.0 * step), cfg) - *at_limit);
    evaluations += 3;
    if (one < 0.5 * wide) {
      return ProbeResult::pass(evaluations, "steep but continuous crossing at t = " + detail::real_text(t_limit));
    }
  }

  Witness w;
  const Profile limit = detail::ray_point(ray_base, ray_dir, t_limit);
  const Profile near = detail::ray_point(ray_base, ray_dir, t_near);
  w.add_profile("u", u).add_profile("flip", limit).add_profile("approach", near);
  w.values["t_flip"] = t_limit;
  w.values["t_approach"] = t_near;
  w.observe(swo, cfg, "flip point vs u", limit, u);
  w.observe(swo, cfg, "approaching point vs u", near, u);
  const std::string which = v_limit == Verdict::Better ? "lower" : "upper";
  return ProbeResult::fail(evaluations, std::move(w),
                           which + " contour set of u is not closed: limit point " + std::string(to_string(v_limit)) +
                               ", approached by " + std::string(to_string(limit_is_b ? va : vb)) + " points");
}

// ---------------------------------------------------------------------------
// Monotonicity for the addition of zero well-being: for u in U++, some v >= u
// has (v, 0) >= u.

inline const std::vector<double>& default_raise_grid() {
  static const std::vector<double> grid{0.1, 0.5, 1, 2, 5, 10, 20, 50, 100, 1e3, 1e4, 1e6};
  return grid;
}

namespace detail {

struct MonotoneZeroSearch {
  std::optional<Profile> v;
  std::optional<std::string> impossible;  // why no v can exist
  std::map<std::string, double> values;   // numbers behind that argument
  std::size_t tried = 0;
};

inline MonotoneZeroSearch search_monotone_zero(SwoId swo, const SwoConfig& cfg, const Profile& u,
                                               const std::vector<double>& t_grid) {
  MonotoneZeroSearch out;
  if (swo == SwoId::Theorem2 || swo == SwoId::ModifiedTheorem2) {
    // (v, 0) has a zero level, so both geometric terms vanish and its value
    // is arctan(sum g) < pi/2 however large v is.
    const double sup = f_bounded_supremum(cfg);
    const double vu = *value_of(swo, u, cfg);
    if (sup <= vu - cfg.tolerance) {
      out.impossible = "value((v,0)) < supremum " + real_text(sup) + " <= value(u) - tau = " + real_text(vu - cfg.tolerance) +
                       " for every v >= u";
      out.values = {{"supremum", sup}, {"value_u", vu}};
      return out;
    }
  }
  if (swo == SwoId::Theorem7) {
    out.impossible = "(v,0) is larger than u, and a larger population is always worse";
    out.values = {{"n_u", static_cast<double>(u.size())}, {"n_v0", static_cast<double>(u.size() + 1)}};
    return out;
  }
  if (swo == SwoId::LeximinExtended && u.all_positive()) {
    out.impossible = "the worst-off level of (v,0) is 0 while padding keeps the worst-off level of u at " +
                     real_text(u.min()) + " > 0";
    out.values = {{"min_u", u.min()}, {"min_v0", 0.0}};
    return out;
  }
  const Profile zero{0.0};
  auto works = [&](const Profile& v) {
    ++out.tried;
    return weakly_better(compare(swo, concat(v, zero), u, cfg));
  };
  if (works(u)) {
    out.v = u;
    return out;
  }
  for (double t : t_grid) {
    std::vector<double> shifted(u.begin(), u.end());
    std::vector<double> scaled(u.begin(), u.end());
    for (double& x : shifted) x += t;
    for (double& x : scaled) x *= 1.0 + t;
    for (auto* levels : {&shifted, &scaled}) {
      Profile v(*levels);
      if (works(v)) {
        out.v = std::move(v);
        return out;
      }
    }
  }
  return out;
}

}  // namespace detail

inline ProbeResult probe_monotone_zero_addition(SwoId swo, const SwoConfig& cfg, const Profile& u,
                                                const std::vector<double>& t_grid) {
  cfg.validate();
  if (!u.all_positive()) throw std::invalid_argument("monotone zero probe: u must be all-positive");
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::invalid_argument("monotone zero probe: grid values must be positive");
  }
  auto found = detail::search_monotone_zero(swo, cfg, u, t_grid);
  if (found.impossible) {
    Witness w;
    w.add_profile("u", u);
    w.values = found.values;
    w.observe(swo, cfg, "(u,0) vs u", concat(u, Profile{0.0}), u);
    return ProbeResult::fail(0, std::move(w), *found.impossible);
  }
  if (found.v) return ProbeResult::pass(found.tried, "(v,0) >= u with v = (" + format_profile(*found.v) + ")");
  return ProbeResult::inconclusive(found.tried, "no v on the grid satisfies (v,0) >= u");
}

// ---------------------------------------------------------------------------
// Probe registry: the universal axioms plus the search-based conditions, with
// the default parameters the command-line front end uses.

enum class ProbeId {
  Anonymity,
  StrongPareto,
  WeakPareto,
  MinimalIncreasing,
  PigouDalton,
  MinimalEquity,
  AvoidSadistic,
  AvoidWeakSadistic,
  StrongAvoidWeakSadistic,
  AdditionOfIndifferent,
  PositiveResponsiveness,
  UtilityIndependence,
  AvoidRepugnant,
  AvoidWeakRepugnant,
  WeakExistenceOfCriticalLevels,
  ExtendedContinuity,
  MonotoneZeroAddition,
};

inline constexpr ProbeId kAllProbes[] = {
    ProbeId::Anonymity,
    ProbeId::StrongPareto,
    ProbeId::WeakPareto,
    ProbeId::MinimalIncreasing,
    ProbeId::PigouDalton,
    ProbeId::MinimalEquity,
    ProbeId::AvoidSadistic,
    ProbeId::AvoidWeakSadistic,
    ProbeId::StrongAvoidWeakSadistic,
    ProbeId::AdditionOfIndifferent,
    ProbeId::PositiveResponsiveness,
    ProbeId::UtilityIndependence,
    ProbeId::AvoidRepugnant,
    ProbeId::AvoidWeakRepugnant,
    ProbeId::WeakExistenceOfCriticalLevels,
    ProbeId::ExtendedContinuity,
    ProbeId::MonotoneZeroAddition,
};

inline std::optional<AxiomId> as_universal(ProbeId p) {
  const auto i = static_cast<int>(p);
  if (i <= static_cast<int>(ProbeId::UtilityIndependence)) return static_cast<AxiomId>(i);
  return std::nullopt;
}

constexpr std::string_view to_string(ProbeId p) {
  switch (p) {
    case ProbeId::AvoidRepugnant: return "AvoidRepugnant";
    case ProbeId::AvoidWeakRepugnant: return "AvoidWeakRepugnant";
    case ProbeId::WeakExistenceOfCriticalLevels: return "WeakExistenceOfCriticalLevels";
    case ProbeId::ExtendedContinuity: return "ExtendedContinuity";
    case ProbeId::MonotoneZeroAddition: return "MonotoneZeroAddition";
    default: return to_string(static_cast<AxiomId>(static_cast<int>(p)));
  }
}

inline std::optional<ProbeId> parse_probe_id(std::string_view name) {
  for (ProbeId p : kAllProbes) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

struct Ray {
  Profile u;
  Profile base;
  Profile dir;
};

/// Fixed rays through known trouble spots (a level crossing zero, a level
/// crossing a tie with u) followed by random rays.
inline std::vector<Ray> continuity_rays(const SamplerConfig& sampler, std::size_t random_rays) {
  std::vector<Ray> rays{
      {Profile{1.0, 1.0}, Profile{2.0, -1.0}, Profile{0.0, 2.0}},
      {Profile{1.0, 1.0}, Profile{2.0, 0.0}, Profile{0.0, 2.0}},
  };
  Sampler s(sampler);
  for (std::size_t k = 0; k < random_rays; ++k) {
    Profile u = s.profile();
    const std::size_t n = s.coin() ? u.size() : s.population();
    Profile base = s.profile(n);
    Profile dir = s.profile(n);
    rays.push_back({std::move(u), std::move(base), std::move(dir)});
  }
  return rays;
}

inline std::vector<Profile> default_repugnant_candidates() {
  return {Profile{10.0}, Profile{10.0, 10.0}, Profile{100.0, 100.0}};
}

inline ProbeResult run_probe(ProbeId probe, SwoId swo, const SwoConfig& cfg, const SamplerConfig& sampler) {
  if (auto axiom = as_universal(probe)) return check_universal_axiom(*axiom, swo, cfg, sampler);
  cfg.validate();
  sampler.validate();
  constexpr std::size_t kMMax = 1000;

  switch (probe) {
    case ProbeId::AvoidRepugnant: {
      // Existential in u: the first candidate that survives suffices.
      std::optional<ProbeResult> first_fail;
      std::optional<ProbeResult> plain_pass;
      std::size_t total = 0;
      for (const auto& u : default_repugnant_candidates()) {
        auto r = check_avoid_repugnant(swo, cfg, u, 1.0, kMMax);
        total += r.samples_run;
        r.note = "u = (" + format_profile(u) + "), eps = 1: " + r.note;
        if (r.status == ProbeStatus::Pass && r.certified) {
          r.samples_run = total;
          return r;
        }
        if (r.status == ProbeStatus::Pass && !plain_pass) plain_pass = std::move(r);
        if (r.status == ProbeStatus::Fail && !first_fail) first_fail = std::move(r);
      }
      auto out = plain_pass ? std::move(*plain_pass) : std::move(*first_fail);
      out.samples_run = total;
      return out;
    }
    case ProbeId::AvoidWeakRepugnant:
      return check_avoid_weak_repugnant(swo, cfg, {0.5, 1.0, 2.0, 5.0}, kMMax, default_repugnant_candidates());
    case ProbeId::WeakExistenceOfCriticalLevels: {
      Sampler s(sampler);
      std::vector<Profile> candidates{Profile{1.0, 2.0, 3.0}};
      const std::size_t extra = std::min<std::size_t>(sampler.samples, 20);
      for (std::size_t k = 0; k < extra; ++k) candidates.push_back(s.profile());
      const double span = 10.0 * sampler.range;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        const auto found = find_critical_level(swo, cfg, candidates[k], -span, span, 1e-9);
        if (found.level) {
          return ProbeResult::pass(k + 1, "u = (" + format_profile(candidates[k]) +
                                              ") ~ (u, c) at c = " + detail::real_text(*found.level));
        }
      }
      return ProbeResult::inconclusive(candidates.size(), "no critical level found for any candidate profile");
    }
    case ProbeId::ExtendedContinuity: {
      const auto rays = continuity_rays(sampler, std::min<std::size_t>(sampler.samples, 100));
      std::size_t passes = 0;
      for (std::size_t k = 0; k < rays.size(); ++k) {
        auto r = probe_extended_continuity(swo, cfg, rays[k].u, rays[k].base, rays[k].dir, 1e-9);
        if (r.status == ProbeStatus::Fail) {
          r.samples_run = k + 1;
          r.note = "ray " + std::to_string(k) + ": " + r.note;
          return r;
        }
        passes += r.status == ProbeStatus::Pass ? 1 : 0;
      }
      if (passes == 0) return ProbeResult::inconclusive(rays.size(), "no ray crossed an indifference boundary");
      return ProbeResult::pass(rays.size(), std::to_string(passes) + " of " + std::to_string(rays.size()) +
                                                " rays crossed continuously; the rest never changed verdict");
    }
    case ProbeId::MonotoneZeroAddition: {
      Sampler s(sampler);
      std::vector<Profile> us{Profile{100.0, 100.0}, Profile{1.0, 1.0}};
      const std::size_t extra = std::min<std::size_t>(sampler.samples, 50);
      for (std::size_t k = 0; k < extra; ++k) us.push_back(s.positive_profile());
      std::optional<ProbeResult> open;
      for (std::size_t k = 0; k < us.size(); ++k) {
        auto r = probe_monotone_zero_addition(swo, cfg, us[k], default_raise_grid());
        if (r.status == ProbeStatus::Fail) {
          r.samples_run = k + 1;
          r.note = "u = (" + format_profile(us[k]) + "): " + r.note;
          return r;
        }
        if (r.status == ProbeStatus::Inconclusive && !open) {
          open = std::move(r);
          open->note = "u = (" + format_profile(us[k]) + "): " + open->note;
        }
      }
      if (open) {
        open->samples_run = us.size();
        return *open;
      }
      return ProbeResult::pass(us.size(), "a raised profile absorbing a zero was found for every sampled u");
    }
    default: break;
  }
  throw std::invalid_argument("unknown probe id");
}

}  // namespace popethics
