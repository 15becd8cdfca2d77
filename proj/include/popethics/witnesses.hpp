#pragma once

// Replays the constructions behind the impossibility results against a
// concrete ordering. Each step is a comparison the construction needs; the
// step's verdict is observed through compare(), never assumed. A chain either
// completes, manufacturing the undesirable conclusion for that ordering, or
// stops at the first step the ordering refuses.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "axioms.hpp"
#include "orderings.hpp"
#include "probe.hpp"
#include "profile.hpp"
#include "sampling.hpp"

namespace popethics {

/// What a step of a construction needs from the ordering.
enum class Expectation { Better, Worse, Indifferent, AtLeastAsGood };

constexpr bool satisfied(Expectation e, Verdict v) {
  switch (e) {
    case Expectation::Better: return v == Verdict::Better;
    case Expectation::Worse: return v == Verdict::Worse;
    case Expectation::Indifferent: return v == Verdict::Indifferent;
    case Expectation::AtLeastAsGood: return v != Verdict::Worse;
  }
  return false;
}

constexpr std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::Better: return "BETTER";
    case Expectation::Worse: return "WORSE";
    case Expectation::Indifferent: return "INDIFFERENT";
    case Expectation::AtLeastAsGood: return "AT_LEAST_AS_GOOD";
  }
  return "?";
}

struct ChainStep {
  std::string description;
  Profile left;
  Profile right;
  Expectation expected;
  Verdict observed;
};

struct WitnessChain {
  std::vector<ChainStep> steps;
  /// 1-based index of the first refused step; 0 means the construction
  /// could not be set up. Empty when every step held.
  std::optional<std::size_t> broke_at;
  std::map<std::string, double> derived;
  std::vector<std::string> notes;

  bool completed() const { return !broke_at.has_value(); }

  /// Observes a step; returns false (and marks the break) when it fails.
  bool step(SwoId swo, const SwoConfig& cfg, std::string description, const Profile& left, const Profile& right,
            Expectation expected) {
    const Verdict v = compare(swo, left, right, cfg);
    steps.push_back({std::move(description), left, right, expected, v});
    if (satisfied(expected, v)) return true;
    broke_at = steps.size();
    return false;
  }
};

inline bool replay(const WitnessChain& chain, SwoId swo, const SwoConfig& cfg) {
  return std::all_of(chain.steps.begin(), chain.steps.end(), [&](const ChainStep& s) {
    return compare(swo, s.left, s.right, cfg) == s.observed;
  });
}

namespace detail {

// Least n >= 1 with pred(n); pred must be monotone from false to true.
template <typename Pred>
std::size_t least_natural(double estimate, Pred pred) {
  double start = std::isfinite(estimate) ? std::max(1.0, std::floor(estimate)) : 1.0;
  auto n = static_cast<std::size_t>(start);
  while (n > 1 && pred(n - 1)) --n;
  while (!pred(n)) ++n;
  return n;
}

// The m values the zero-padding steps are checked at: 2..cap plus the one
// the construction actually uses.
inline std::vector<std::size_t> padding_counts(std::size_t cap, std::size_t used) {
  std::set<std::size_t> ms;
  for (std::size_t m = 2; m <= cap && m <= used; ++m) ms.insert(m);
  if (used >= 2) ms.insert(used);
  return {ms.begin(), ms.end()};
}

}  // namespace detail

/// Monotone zero addition, then zero-padding invariance, then equalizing and
/// raising everyone to eps: ends with a crowd at eps beating u.
inline WitnessChain run_theorem1_chain(SwoId swo, const SwoConfig& cfg, const Profile& u, double eps,
                                       std::size_t padding_cap = 20) {
  cfg.validate();
  if (!u.all_positive()) throw std::invalid_argument("chain: u must be all-positive");
  if (!(eps > 0.0)) throw std::invalid_argument("chain: epsilon must be positive");

  WitnessChain chain;
  const Profile zero{0.0};
  const auto search = detail::search_monotone_zero(swo, cfg, u, default_raise_grid());
  if (!search.v) {
    chain.notes.push_back(search.impossible ? "no v >= u absorbs a zero: " + *search.impossible
                                            : "no v on the raise grid absorbs a zero");
    chain.step(swo, cfg, "(v,0) >= u for some v >= u (tried v = u)", concat(u, zero), u,
               Expectation::AtLeastAsGood);
    if (chain.completed()) chain.broke_at = 1;
    return chain;
  }
  const Profile& v = *search.v;
  if (!chain.step(swo, cfg, "(v,0) >= u", concat(v, zero), u, Expectation::AtLeastAsGood)) return chain;

  const std::size_t n = v.size();
  const double total = sum(v);
  // Least m' with eps > sum(v) / (m' + n).
  const std::size_t m_prime = detail::least_natural(
      total / eps - static_cast<double>(n) + 1.0,
      [&](std::size_t m) { return eps * static_cast<double>(m + n) > total; });
  const std::size_t population = m_prime + n;
  chain.derived["n"] = static_cast<double>(n);
  chain.derived["m_prime"] = static_cast<double>(m_prime);
  chain.derived["population"] = static_cast<double>(population);
  chain.derived["epsilon"] = eps;
  chain.derived["sum_v"] = total;

  for (std::size_t m : detail::padding_counts(padding_cap, m_prime)) {
    if (!chain.step(swo, cfg, "(v,0) ~ (v," + std::to_string(m) + "*0)", concat(v, zero), concat(v, replicate(m, 0.0)),
                    Expectation::Indifferent))
      return chain;
  }

  const Profile padded = concat(v, replicate(m_prime, 0.0));
  const Profile equalized = replicate(population, total / static_cast<double>(population));
  if (!chain.step(swo, cfg, "equal split of (v, m'*0) >= (v, m'*0)", equalized, padded, Expectation::AtLeastAsGood))
    return chain;
  const Profile crowd = replicate(population, eps);
  if (!chain.step(swo, cfg, "(m'+n)*eps > equal split", crowd, equalized, Expectation::Better)) return chain;
  chain.step(swo, cfg, "(m'+n)*eps > u", crowd, u, Expectation::Better);
  return chain;
}

/// Bracket wide enough to contain a critical level of u for the registry.
inline std::pair<double, double> default_critical_bracket(const Profile& u, const SwoConfig& cfg) {
  const double scale =
      1.0 + std::max({std::fabs(u.min()), std::fabs(u.max()), std::fabs(cfg.critical_level)});
  return {std::min({u.min(), cfg.critical_level, 0.0}) - 10.0 * scale,
          std::max({u.max(), cfg.critical_level, 0.0}) + 10.0 * scale};
}

/// Critical level of u, spread to every v through independence, then
/// equalizing and raising to c + eps: ends with a crowd at c + eps beating v.
inline WitnessChain run_theorem4_chain(SwoId swo, const SwoConfig& cfg, const Profile& u, const Profile& v,
                                       double eps, std::size_t padding_cap = 20) {
  cfg.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("chain: epsilon must be positive");

  WitnessChain chain;
  const auto [lo, hi] = default_critical_bracket(u, cfg);
  const auto found = find_critical_level(swo, cfg, u, lo, hi, 1e-9);
  if (!found.level) {
    chain.broke_at = 0;
    chain.notes.push_back("no critical level for u in [" + detail::real_text(lo) + ", " + detail::real_text(hi) +
                          "]: " + found.reason());
    return chain;
  }
  const double c = *found.level;
  const Profile at_c{c};
  chain.derived["c"] = c;
  if (!chain.step(swo, cfg, "(u,c) ~ u", concat(u, at_c), u, Expectation::Indifferent)) return chain;
  if (!chain.step(swo, cfg, "(u,c,v) ~ (u,v)", concat(u, at_c, v), concat(u, v), Expectation::Indifferent))
    return chain;
  if (!chain.step(swo, cfg, "(c,v) ~ v", concat(at_c, v), v, Expectation::Indifferent)) return chain;

  const std::size_t m = v.size();
  const double total = sum(v);
  // Least k' with c + eps > (k' c + sum(v)) / (k' + m), cross-multiplied.
  const auto holds = [&](std::size_t k) {
    return (c + eps) * static_cast<double>(k + m) > static_cast<double>(k) * c + total;
  };
  const std::size_t k_prime = detail::least_natural((total - (c + eps) * static_cast<double>(m)) / eps + 1.0, holds);
  const std::size_t population = k_prime + m;
  chain.derived["k_prime"] = static_cast<double>(k_prime);
  chain.derived["m"] = static_cast<double>(m);
  chain.derived["population"] = static_cast<double>(population);
  chain.derived["epsilon"] = eps;

  for (std::size_t k : detail::padding_counts(padding_cap, k_prime)) {
    if (!chain.step(swo, cfg, "(" + std::to_string(k) + "*c,v) ~ v", concat(replicate(k, c), v), v,
                    Expectation::Indifferent))
      return chain;
  }

  const Profile padded = concat(replicate(k_prime, c), v);
  const double average = (static_cast<double>(k_prime) * c + total) / static_cast<double>(population);
  const Profile equalized = replicate(population, average);
  if (!chain.step(swo, cfg, "equal split of (k'*c, v) >= (k'*c, v)", equalized, padded, Expectation::AtLeastAsGood))
    return chain;
  const Profile crowd = replicate(population, c + eps);
  if (!chain.step(swo, cfg, "(k'+m)*(c+eps) > equal split", crowd, equalized, Expectation::Better)) return chain;
  chain.step(swo, cfg, "(k'+m)*(c+eps) > v", crowd, v, Expectation::Better);
  return chain;
}

/// Observed verdict of n*c against m*(c - eps); orderings with a fixed
/// critical level c that spreads through independence rank it Better.
inline Verdict check_proposition1(SwoId swo, const SwoConfig& cfg, double c, double eps, std::size_t n,
                                  std::size_t m) {
  cfg.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return compare(swo, replicate(n, c), replicate(m, c - eps), cfg);
}

/// v >= s exactly when (u,v) >= (u,s), in both directions, on sampled triples.
inline ProbeResult test_lemma2_equivalence(SwoId swo, const SwoConfig& cfg, const SamplerConfig& sampler) {
  return check_universal_axiom(AxiomId::UtilityIndependence, swo, cfg, sampler);
}

/// Weak sadistic avoidance + strong Pareto + continuity should force the
/// strong form of sadistic avoidance. Fails only when all three premise
/// probes pass and the conclusion probe finds a counterexample.
inline ProbeResult test_lemma3_implication(SwoId swo, const SwoConfig& cfg, const SamplerConfig& sampler) {
  auto sub = [&](ProbeId p) {
    SamplerConfig sc = sampler;
    sc.seed = derive_seed(sampler.seed, to_string(p));
    return run_probe(p, swo, cfg, sc);
  };
  const ProbeId premises[] = {ProbeId::AvoidWeakSadistic, ProbeId::StrongPareto, ProbeId::ExtendedContinuity};
  std::string note;
  std::size_t total = 0;
  bool premises_hold = true;
  for (ProbeId p : premises) {
    const auto r = sub(p);
    total += r.samples_run;
    premises_hold = premises_hold && r.status == ProbeStatus::Pass;
    note += std::string(to_string(p)) + "=" + std::string(to_string(r.status)) + ", ";
  }
  auto conclusion = sub(ProbeId::StrongAvoidWeakSadistic);
  total += conclusion.samples_run;
  note += "StrongAvoidWeakSadistic=" + std::string(to_string(conclusion.status));

  if (!premises_hold) return ProbeResult::pass(total, note + "; a premise does not hold, implication is vacuous");
  if (conclusion.status == ProbeStatus::Fail) {
    conclusion.samples_run = total;
    conclusion.note = note + "; premises hold but the conclusion fails";
    return conclusion;
  }
  return ProbeResult::pass(total, note + "; implication consistent");
}

/// Status of each condition of the weak impossibility (weak sadistic
/// avoidance, weak repugnant avoidance, minimal equity, strong Pareto,
/// continuity, a critical level). An ordering cannot pass all six.
inline std::vector<std::pair<ProbeId, ProbeStatus>> weak_impossibility_profile(SwoId swo, const SwoConfig& cfg,
                                                                             const SamplerConfig& sampler) {
  std::vector<std::pair<ProbeId, ProbeStatus>> out;
  for (ProbeId p : {ProbeId::AvoidWeakSadistic, ProbeId::AvoidWeakRepugnant, ProbeId::MinimalEquity,
                    ProbeId::StrongPareto, ProbeId::ExtendedContinuity, ProbeId::WeakExistenceOfCriticalLevels}) {
    SamplerConfig sc = sampler;
    sc.seed = derive_seed(sampler.seed, to_string(p));
    out.emplace_back(p, run_probe(p, swo, cfg, sc).status);
  }
  return out;
}

}  // namespace popethics
