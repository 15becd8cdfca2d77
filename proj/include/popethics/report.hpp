#pragma once

// Machine-readable reports. nlohmann::json objects keep keys sorted, so a
// report serializes identically for identical inputs.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "axioms.hpp"
#include "orderings.hpp"
#include "probe.hpp"
#include "profile.hpp"
#include "witnesses.hpp"

namespace popethics {

inline constexpr std::string_view kReportSchemaVersion = "1";

inline nlohmann::json to_json(const Profile& p) {
  return nlohmann::json(std::vector<double>(p.begin(), p.end()));
}

inline nlohmann::json to_json(const SwoConfig& cfg) {
  return {{"g", to_string(cfg.g)},
          {"f_bounded", "arctan"},
          {"f_dampen", to_string(cfg.f_dampen)},
          {"critical_level", cfg.critical_level},
          {"tolerance", cfg.tolerance}};
}

inline nlohmann::json to_json(const Witness& w) {
  nlohmann::json profiles = nlohmann::json::object();
  for (const auto& [name, p] : w.profiles) profiles[name] = to_json(p);
  nlohmann::json comparisons = nlohmann::json::array();
  for (const auto& c : w.comparisons) {
    comparisons.push_back(
        {{"label", c.label}, {"left", to_json(c.left)}, {"right", to_json(c.right)}, {"observed", to_string(c.observed)}});
  }
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [k, v] : w.values) values[k] = v;
  return {{"profiles", profiles}, {"comparisons", comparisons}, {"values", values}};
}

inline Profile profile_from_json(const nlohmann::json& j) { return Profile(j.get<std::vector<double>>()); }

inline Verdict verdict_from_string(std::string_view s) {
  if (s == "BETTER") return Verdict::Better;
  if (s == "WORSE") return Verdict::Worse;
  if (s == "INDIFFERENT") return Verdict::Indifferent;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

/// Inverse of to_json(Witness), for replaying witnesses read from a report.
inline Witness witness_from_json(const nlohmann::json& j) {
  Witness w;
  for (const auto& [name, p] : j.at("profiles").items()) w.add_profile(name, profile_from_json(p));
  for (const auto& c : j.at("comparisons")) {
    w.comparisons.push_back({c.at("label").get<std::string>(), profile_from_json(c.at("left")),
                             profile_from_json(c.at("right")), verdict_from_string(c.at("observed").get<std::string>())});
  }
  for (const auto& [k, v] : j.at("values").items()) w.values[k] = v.get<double>();
  return w;
}

/// FNV-1a 64 of the compact witness JSON, as 16 hex digits.
inline std::string witness_digest(const Witness& w) {
  const std::string text = to_json(w).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::json to_json(const ProbeResult& r) {
  nlohmann::json j = {{"status", to_string(r.status)},
                      {"samples", r.samples_run},
                      {"certified", r.certified},
                      {"note", r.note},
                      {"witness", nullptr},
                      {"witness_digest", nullptr}};
  if (r.witness) {
    j["witness"] = to_json(*r.witness);
    j["witness_digest"] = witness_digest(*r.witness);
  }
  return j;
}

inline nlohmann::json to_json(const WitnessChain& chain) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const auto& s = chain.steps[i];
    steps.push_back({{"index", i + 1},
                     {"description", s.description},
                     {"left", to_json(s.left)},
                     {"right", to_json(s.right)},
                     {"expected", to_string(s.expected)},
                     {"observed", to_string(s.observed)},
                     {"holds", satisfied(s.expected, s.observed)}});
  }
  nlohmann::json derived = nlohmann::json::object();
  for (const auto& [k, v] : chain.derived) derived[k] = v;
  return {{"steps", steps},
          {"conclusion", chain.completed() ? "chain_completed" : "broke_at_step"},
          {"broke_at", chain.broke_at ? nlohmann::json(*chain.broke_at) : nlohmann::json(nullptr)},
          {"derived", derived},
          {"notes", chain.notes}};
}

/// Top-level report document.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json swos = nlohmann::json::array();
  nlohmann::json rows = nlohmann::json::array();
  /// Off by default: a wall-clock field would break byte-identical reruns.
  std::optional<double> wall_seconds;

  void add_swo(SwoId id, const SwoConfig& cfg) { swos.push_back({{"id", to_string(id)}, {"config", popethics::to_json(cfg)}}); }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"schema_version", kReportSchemaVersion},
                        {"command", command},
                        {"seed", seed},
                        {"swos", swos},
                        {"rows", rows},
                        {"soundness", kSoundnessNote}};
    if (wall_seconds) j["wall_seconds"] = *wall_seconds;
    return j;
  }

  /// Pretty-printed, newline-terminated.
  std::string dump() const { return to_json().dump(2) + "\n"; }
};

inline constexpr std::string_view kCsvHeader = "swo,axiom,status,samples,witness_digest";

inline std::string csv_row(std::string_view swo, std::string_view axiom, const ProbeResult& r) {
  std::string line;
  line += swo;
  line += ',';
  line += axiom;
  line += ',';
  line += to_string(r.status);
  line += ',';
  line += std::to_string(r.samples_run);
  line += ',';
  if (r.witness) line += witness_digest(*r.witness);
  return line;
}

}  // namespace popethics
