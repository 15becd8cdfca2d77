#pragma once

// Result records shared by the axiom probes and the proof-chain replays.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orderings.hpp"
#include "profile.hpp"

namespace popethics {

enum class ProbeStatus { Pass, Fail, Inconclusive };

constexpr std::string_view to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Pass: return "pass";
    case ProbeStatus::Fail: return "fail";
    case ProbeStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ObservedComparison {
  std::string label;
  Profile left;
  Profile right;
  Verdict observed;
};

/// Concrete counterexample: the profiles involved, the comparisons that
/// violate the axiom with the verdicts observed, and any numbers derived
/// along the way.
struct Witness {
  std::vector<std::pair<std::string, Profile>> profiles;
  std::vector<ObservedComparison> comparisons;
  std::map<std::string, double> values;

  Witness& add_profile(std::string name, Profile p) {
    profiles.emplace_back(std::move(name), std::move(p));
    return *this;
  }

  /// Evaluates left against right and records the verdict.
  Verdict observe(SwoId swo, const SwoConfig& cfg, std::string label, const Profile& left, const Profile& right) {
    const Verdict v = compare(swo, left, right, cfg);
    comparisons.push_back({std::move(label), left, right, v});
    return v;
  }
};

/// Re-runs every recorded comparison; true when all verdicts reproduce.
inline bool replay(const Witness& w, SwoId swo, const SwoConfig& cfg) {
  for (const auto& c : w.comparisons) {
    if (compare(swo, c.left, c.right, cfg) != c.observed) return false;
  }
  return true;
}

/// Pass means no counterexample was found in `samples_run` instances;
/// Fail always carries a witness.
struct ProbeResult {
  ProbeStatus status = ProbeStatus::Inconclusive;
  std::size_t samples_run = 0;
  std::optional<Witness> witness;
  std::string note;
  /// Pass backed by a closed-form bound rather than by search alone.
  bool certified = false;

  static ProbeResult pass(std::size_t samples, std::string note = {}, bool certified = false) {
    return {ProbeStatus::Pass, samples, std::nullopt, std::move(note), certified};
  }
  static ProbeResult fail(std::size_t samples, Witness w, std::string note = {}) {
    return {ProbeStatus::Fail, samples, std::move(w), std::move(note), false};
  }
  static ProbeResult inconclusive(std::size_t samples, std::string note) {
    return {ProbeStatus::Inconclusive, samples, std::nullopt, std::move(note), false};
  }
};

inline constexpr std::string_view kSoundnessNote =
    "Pass is sampling evidence only (no counterexample among the instances tried); "
    "Fail is a constructive refutation with a replayable witness.";

}  // namespace popethics
