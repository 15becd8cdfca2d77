#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process
// with their own streams.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "popethics/axioms.hpp"
#include "popethics/orderings.hpp"
#include "popethics/probe.hpp"
#include "popethics/profile.hpp"
#include "popethics/report.hpp"
#include "popethics/sampling.hpp"
#include "popethics/witnesses.hpp"

namespace popethics::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitNotFound = 3;
inline constexpr int kExitUsage = 64;

/// Bad user input that is caught after CLI11 parsing succeeded.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string real_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct SwoOptions {
  std::string swo;
  std::string g = "identity";
  std::string f_dampen = "saturating";
  double c = 0.0;
  double tau = 1e-9;

  void attach(CLI::App& app, bool swo_required = true) {
    auto* opt = app.add_option("--swo", swo, "ordering id (total, average, clgu, theorem2, theorem3, leximin, "
                                             "theorem7, modified-theorem2)");
    if (swo_required) opt->required();
    app.add_option("--g", g, "transform g: identity | exp_bounded");
    app.add_option("--f-dampen", f_dampen, "number dampener f: saturating | sqrt | identity");
    app.add_option("--c", c, "critical level");
    app.add_option("--tau", tau, "indifference tolerance");
  }

  SwoId id() const { return parse_swo(swo); }

  static SwoId parse_swo(const std::string& name) {
    if (auto id = parse_swo_id(name)) return *id;
    throw UsageError("unknown SWO '" + name + "'");
  }

  SwoConfig config() const {
    SwoConfig cfg;
    if (auto k = parse_g_kind(g)) {
      cfg.g = *k;
    } else {
      throw UsageError("unknown g '" + g + "'");
    }
    if (auto k = parse_f_dampen_kind(f_dampen)) {
      cfg.f_dampen = *k;
    } else {
      throw UsageError("unknown f-dampen '" + f_dampen + "'");
    }
    cfg.critical_level = c;
    cfg.tolerance = tau;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

struct SamplerOptions {
  std::uint64_t seed = 7;
  std::size_t samples = 100000;
  double range = 100.0;
  std::size_t max_pop = 8;

  void attach(CLI::App& app) {
    app.add_option("--seed", seed, "master seed");
    app.add_option("--samples", samples, "sampled instances per probe");
    app.add_option("--range", range, "levels are drawn from [-range, range]");
    app.add_option("--max-pop", max_pop, "largest sampled population");
  }

  SamplerConfig config() const {
    SamplerConfig s{seed, range, max_pop, samples};
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return s;
  }
};

inline Profile parse_arg_profile(const std::string& text, const std::string& what) {
  try {
    return parse_profile(text);
  } catch (const ParseError& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

inline int aggregate_exit(const std::vector<ProbeStatus>& statuses) {
  if (std::find(statuses.begin(), statuses.end(), ProbeStatus::Fail) != statuses.end()) return kExitFail;
  if (std::find(statuses.begin(), statuses.end(), ProbeStatus::Inconclusive) != statuses.end())
    return kExitInconclusive;
  return kExitPass;
}

/// Seed of one (ordering, probe) cell; shared by `axioms` and `matrix` so
/// their rows agree.
inline std::uint64_t cell_seed(std::uint64_t master, SwoId swo, ProbeId probe) {
  return derive_seed(master, std::string(to_string(swo)) + "/" + std::string(to_string(probe)));
}

inline void print_witness(std::ostream& out, const Witness& w, const std::string& indent) {
  for (const auto& [name, p] : w.profiles) out << indent << name << " = (" << format_profile(p) << ")\n";
  for (const auto& c : w.comparisons) {
    out << indent << c.label << ": (" << format_profile(c.left) << ") vs (" << format_profile(c.right)
        << ") -> " << to_string(c.observed) << "\n";
  }
  for (const auto& [k, v] : w.values) out << indent << k << " = " << real_text(v) << "\n";
}

inline void print_probe_row(std::ostream& out, std::string_view probe, const ProbeResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%-30s %-12s %8zu", std::string(probe).c_str(),
                std::string(to_string(r.status)).c_str(), r.samples_run);
  out << head;
  if (r.certified) out << "  [certified]";
  if (!r.note.empty()) out << "  " << r.note;
  out << "\n";
  if (r.witness) print_witness(out, *r.witness, "    ");
}

inline nlohmann::json probe_row(SwoId swo, ProbeId probe, const ProbeResult& r) {
  auto j = to_json(r);
  j["swo"] = to_string(swo);
  j["axiom"] = to_string(probe);
  return j;
}

// ---------------------------------------------------------------------------
// compare

struct CompareCommand {
  SwoOptions swo;
  std::vector<std::string> profiles;
  std::string file;

  void attach(CLI::App& app) {
    swo.attach(app);
    app.add_option("profiles", profiles, "two profiles, e.g. \"10*10\" \"101*1\"");
    app.add_option("--file", file, "read the two profiles from a file, one per line");
  }

  int run(std::ostream& out) const {
    const SwoId id = swo.id();
    const SwoConfig cfg = swo.config();
    std::vector<Profile> ps;
    if (!file.empty()) {
      if (!profiles.empty()) throw UsageError("give profiles either positionally or with --file, not both");
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read '" + file + "'");
      try {
        ps = read_profiles(in);
      } catch (const std::exception& e) {
        throw UsageError(file + ": " + e.what());
      }
    } else {
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        ps.push_back(parse_arg_profile(profiles[i], i == 0 ? "left profile" : "right profile"));
      }
    }
    if (ps.size() != 2) throw UsageError("compare needs exactly two profiles, got " + std::to_string(ps.size()));

    out << to_string(compare(id, ps[0], ps[1], cfg));
    const auto left = value_of(id, ps[0], cfg);
    const auto right = value_of(id, ps[1], cfg);
    if (left && right) out << "  value_left=" << real_text(*left) << " value_right=" << real_text(*right);
    out << "\n";
    return kExitPass;
  }
};

// ---------------------------------------------------------------------------
// axioms

struct AxiomsCommand {
  SwoOptions swo;
  SamplerOptions sampler;
  std::string axiom = "all";
  std::string json;
  bool timing = false;

  void attach(CLI::App& app) {
    swo.attach(app);
    sampler.attach(app);
    app.add_option("--axiom", axiom, "probe name or 'all'");
    app.add_option("--json", json, "write the JSON report here");
    app.add_flag("--timing", timing, "include wall-clock seconds in the JSON report");
  }

  int run(std::ostream& out) const {
    const auto start = std::chrono::steady_clock::now();
    const SwoId id = swo.id();
    const SwoConfig cfg = swo.config();
    const SamplerConfig base = sampler.config();

    std::vector<ProbeId> probes;
    if (axiom == "all") {
      probes.assign(std::begin(kAllProbes), std::end(kAllProbes));
    } else if (auto p = parse_probe_id(axiom)) {
      probes.push_back(*p);
    } else {
      throw UsageError("unknown axiom '" + axiom + "'");
    }

    Report report;
    report.command = "axioms";
    report.seed = base.seed;
    report.add_swo(id, cfg);
    std::vector<ProbeStatus> statuses;
    out << "swo: " << to_string(id) << "\n";
    for (ProbeId p : probes) {
      SamplerConfig sc = base;
      sc.seed = cell_seed(base.seed, id, p);
      const auto r = run_probe(p, id, cfg, sc);
      statuses.push_back(r.status);
      print_probe_row(out, to_string(p), r);
      report.rows.push_back(probe_row(id, p, r));
    }
    out << kSoundnessNote << "\n";
    if (!json.empty()) {
      if (timing) report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_file(json, report.dump());
    }
    return aggregate_exit(statuses);
  }
};

// ---------------------------------------------------------------------------
// matrix

struct MatrixCommand {
  SwoOptions swo;
  SamplerOptions sampler;
  std::string swos;
  std::string csv;
  std::string json;
  unsigned threads = 0;
  bool timing = false;

  void attach(CLI::App& app) {
    swo.attach(app, false);
    sampler.attach(app);
    app.add_option("--swos", swos, "comma-separated ordering ids or 'all'")->required();
    app.add_option("--csv", csv, "write the CSV grid here");
    app.add_option("--json", json, "write the JSON report here");
    app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
    app.add_flag("--timing", timing, "include wall-clock seconds in the JSON report");
  }

  std::vector<SwoId> selected() const {
    std::vector<SwoId> ids;
    if (swos == "all") return {std::begin(kAllSwos), std::end(kAllSwos)};
    std::stringstream ss(swos);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      const SwoId id = SwoOptions::parse_swo(name);
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    if (ids.empty()) throw UsageError("--swos lists no orderings");
    return ids;
  }

  int run(std::ostream& out) const {
    const auto start = std::chrono::steady_clock::now();
    const auto ids = selected();
    const SwoConfig cfg = swo.config();
    const SamplerConfig base = sampler.config();

    struct Cell {
      SwoId swo;
      ProbeId probe;
      ProbeResult result;
    };
    std::vector<Cell> cells;
    for (SwoId id : ids) {
      for (ProbeId p : kAllProbes) cells.push_back({id, p, {}});
    }

    // Every cell has its own derived seed, so scheduling cannot change results.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        SamplerConfig sc = base;
        sc.seed = cell_seed(base.seed, cells[i].swo, cells[i].probe);
        cells[i].result = run_probe(cells[i].probe, cells[i].swo, cfg, sc);
      }
    };
    unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cells.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Report report;
    report.command = "matrix";
    report.seed = base.seed;
    for (SwoId id : ids) report.add_swo(id, cfg);
    std::string csv_text = std::string(kCsvHeader) + "\n";
    std::vector<ProbeStatus> statuses;
    std::optional<SwoId> current;
    for (const auto& cell : cells) {
      if (cell.swo != current) {
        out << "swo: " << to_string(cell.swo) << "\n";
        current = cell.swo;
      }
      print_probe_row(out, to_string(cell.probe), cell.result);
      statuses.push_back(cell.result.status);
      report.rows.push_back(probe_row(cell.swo, cell.probe, cell.result));
      csv_text += csv_row(to_string(cell.swo), to_string(cell.probe), cell.result) + "\n";
    }
    out << kSoundnessNote << "\n";
    if (!csv.empty()) write_file(csv, csv_text);
    if (!json.empty()) {
      if (timing) report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_file(json, report.dump());
    }
    return aggregate_exit(statuses);
  }
};

// ---------------------------------------------------------------------------
// critical-level

struct CriticalLevelCommand {
  SwoOptions swo;
  std::string profile;
  std::optional<double> lo;
  std::optional<double> hi;
  double tol = 1e-9;

  void attach(CLI::App& app) {
    swo.attach(app);
    app.add_option("--profile", profile, "profile u")->required();
    app.add_option("--lo", lo, "lower end of the search bracket");
    app.add_option("--hi", hi, "upper end of the search bracket");
    app.add_option("--tol", tol, "bracket width at which the search stops");
  }

  int run(std::ostream& out) const {
    const SwoId id = swo.id();
    const SwoConfig cfg = swo.config();
    const Profile u = parse_arg_profile(profile, "--profile");
    const auto [dlo, dhi] = default_critical_bracket(u, cfg);
    const double a = lo.value_or(dlo);
    const double b = hi.value_or(dhi);
    if (!(a < b)) throw UsageError("--lo must be below --hi");
    if (!(tol > 0.0)) throw UsageError("--tol must be positive");
    const auto found = find_critical_level(id, cfg, u, a, b, tol);
    if (found.level) {
      out << "c=" << real_text(*found.level) << "\n";
      return kExitPass;
    }
    out << "NONE " << found.reason() << "\n";
    return kExitNotFound;
  }
};

// ---------------------------------------------------------------------------
// witness

struct WitnessCommand {
  SwoOptions swo;
  SamplerOptions sampler;
  std::string theorem;
  std::optional<std::string> u;
  std::optional<std::string> v;
  double epsilon = 1.0;
  std::size_t n = 1;
  std::size_t m = 1000000;
  std::string json;

  WitnessCommand() { sampler.samples = 10000; }

  void attach(CLI::App& app) {
    swo.attach(app);
    sampler.attach(app);
    app.add_option("--theorem", theorem, "construction to replay")
        ->required()
        ->check(CLI::IsMember({"1", "4", "prop1", "lemma2", "lemma3"}));
    app.add_option("--u", u, "profile u");
    app.add_option("--v", v, "profile v (construction 4)");
    app.add_option("--epsilon", epsilon, "positive margin");
    app.add_option("--n", n, "size of the population at c (prop1)");
    app.add_option("--m", m, "size of the population at c - epsilon (prop1)");
    app.add_option("--json", json, "write the JSON report here");
  }

  static void print_chain(std::ostream& out, const WitnessChain& chain) {
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      const auto& s = chain.steps[i];
      char head[96];
      std::snprintf(head, sizeof head, "%3zu  %-17s %-12s %-4s  ", i + 1, std::string(to_string(s.expected)).c_str(),
                    std::string(to_string(s.observed)).c_str(), satisfied(s.expected, s.observed) ? "ok" : "NO");
      out << head << s.description << "\n      (" << format_profile(s.left) << ") vs (" << format_profile(s.right)
          << ")\n";
    }
    for (const auto& [k, val] : chain.derived) out << k << " = " << real_text(val) << "\n";
    for (const auto& note : chain.notes) out << "note: " << note << "\n";
    if (chain.completed()) {
      out << "chain completed\n";
    } else {
      out << "broke at step " << *chain.broke_at << "\n";
    }
  }

  int run(std::ostream& out) const {
    const SwoId id = swo.id();
    const SwoConfig cfg = swo.config();
    if (!(epsilon > 0.0)) throw UsageError("--epsilon must be positive");

    Report report;
    report.command = "witness";
    report.seed = sampler.seed;
    report.add_swo(id, cfg);
    int code = kExitPass;

    if (theorem == "1" || theorem == "4") {
      const Profile pu = parse_arg_profile(u.value_or(theorem == "1" ? "10*10" : "2 2"), "--u");
      WitnessChain chain;
      try {
        if (theorem == "1") {
          chain = run_theorem1_chain(id, cfg, pu, epsilon);
        } else {
          chain = run_theorem4_chain(id, cfg, pu, parse_arg_profile(v.value_or("5 5"), "--v"), epsilon);
        }
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      print_chain(out, chain);
      auto row = to_json(chain);
      row["theorem"] = theorem;
      report.rows.push_back(row);
      code = chain.completed() ? kExitPass : kExitFail;
    } else if (theorem == "prop1") {
      if (n < 1 || m < 1) throw UsageError("--n and --m must be at least 1");
      const double c = swo.c;
      const Verdict verdict = check_proposition1(id, cfg, c, epsilon, n, m);
      out << n << "*" << real_text(c) << " vs " << m << "*" << real_text(c - epsilon) << ": " << to_string(verdict)
          << "\n";
      report.rows.push_back({{"theorem", theorem},
                             {"c", c},
                             {"epsilon", epsilon},
                             {"n", n},
                             {"m", m},
                             {"expected", "BETTER"},
                             {"observed", to_string(verdict)}});
      code = verdict == Verdict::Better ? kExitPass : kExitFail;
    } else {
      const SamplerConfig sc = sampler.config();
      const auto r = theorem == "lemma2" ? test_lemma2_equivalence(id, cfg, sc) : test_lemma3_implication(id, cfg, sc);
      print_probe_row(out, theorem, r);
      auto row = to_json(r);
      row["theorem"] = theorem;
      report.rows.push_back(row);
      code = aggregate_exit({r.status});
    }
    if (!json.empty()) write_file(json, report.dump());
    return code;
  }
};

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Population-ethics welfare orderings: comparisons, axiom probes and proof-chain witnesses",
               "popethics"};
  app.require_subcommand(1);

  CompareCommand compare_cmd;
  AxiomsCommand axioms_cmd;
  MatrixCommand matrix_cmd;
  CriticalLevelCommand critical_cmd;
  WitnessCommand witness_cmd;
  auto* compare_app = app.add_subcommand("compare", "compare two profiles under one ordering");
  auto* axioms_app = app.add_subcommand("axioms", "run axiom probes for one ordering");
  auto* matrix_app = app.add_subcommand("matrix", "run every probe for several orderings");
  auto* critical_app = app.add_subcommand("critical-level", "find c with (u, c) ~ u");
  auto* witness_app = app.add_subcommand("witness", "replay a proof construction");
  compare_cmd.attach(*compare_app);
  axioms_cmd.attach(*axioms_app);
  matrix_cmd.attach(*matrix_app);
  critical_cmd.attach(*critical_app);
  witness_cmd.attach(*witness_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (compare_app->parsed()) return compare_cmd.run(out);
    if (axioms_app->parsed()) return axioms_cmd.run(out);
    if (matrix_app->parsed()) return matrix_cmd.run(out);
    if (critical_app->parsed()) return critical_cmd.run(out);
    return witness_cmd.run(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace popethics::cli
