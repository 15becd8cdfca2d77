#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"popethics"};
  owned.insert(owned.end(), args);
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = popethics::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("popethics-test-" + std::to_string(::getpid()) + "-" +
                                                 std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

}  // namespace

TEST(CliCompare, IntroExamples) {
  auto r = run({"compare", "--swo", "total", "10*10", "101*1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "WORSE  value_left=100 value_right=101\n");
  r = run({"compare", "--swo", "average", "10*10", "101*1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("BETTER", 0), 0u);
  r = run({"compare", "--swo", "total", "1", "1"});
  EXPECT_EQ(r.out.rfind("INDIFFERENT", 0), 0u);
}

TEST(CliCompare, SadisticMeansToTwelveDigits) {
  const auto r = run({"compare", "--swo", "average", "10*10 100*1", "10*10 -1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "WORSE  value_left=1.81818181818 value_right=9\n");
}

TEST(CliCompare, OrderOnlyOrderingsPrintNoValues) {
  const auto r = run({"compare", "--swo", "leximin", "0 10", "1 1"});
  EXPECT_EQ(r.out, "WORSE\n");
  EXPECT_EQ(run({"compare", "--swo", "theorem3", "2 0", "1 1"}).out, "BETTER\n");
}

TEST(CliCompare, ConfigFlags) {
  EXPECT_EQ(run({"compare", "--swo", "clgu", "--c", "1", "2 2", "2 2 1"}).out.rfind("INDIFFERENT", 0), 0u);
  EXPECT_EQ(run({"compare", "--swo", "total", "--tau", "0.1", "1", "1.05"}).out.rfind("INDIFFERENT", 0), 0u);
  EXPECT_EQ(run({"compare", "--swo", "total", "--g", "exp_bounded", "1", "0"}).code, 0);
  EXPECT_EQ(run({"compare", "--swo", "theorem3", "--f-dampen", "sqrt", "2 0", "1 1"}).out, "BETTER\n");
}

TEST(CliCompare, ReadsFile) {
  TempDir dir;
  std::ofstream(dir / "p.txt") << "# pair\n10*10\n\n101*1\n";
  const auto r = run({"compare", "--swo", "total", "--file", (dir / "p.txt").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "WORSE  value_left=100 value_right=101\n");
}

TEST(CliCompare, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"compare", "--swo", "nope", "1", "1"},
           {"compare", "--swo", "total", "1", "x"},
           {"compare", "--swo", "total", "1", "0*1"},
           {"compare", "--swo", "total", "1"},
           {"compare", "--swo", "total", "1", "2", "3"},
           {"compare", "--swo", "total", "--tau", "0", "1", "2"},
           {"compare", "--swo", "total", "--g", "cubic", "1", "2"},
           {"compare", "1", "2"},
           {"compare", "--bogus", "--swo", "total", "1", "2"},
           {"frobnicate"},
           {}}) {
    std::vector<std::string> owned{"popethics"};
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : owned) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(popethics::cli::run(static_cast<int>(argv.size()), argv.data(), out, err), 64)
        << (args.empty() ? "" : args.back());
    EXPECT_FALSE(err.str().empty());
  }
}

TEST(CliHelp, ExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("compare"), std::string::npos);
  EXPECT_EQ(run({"matrix", "--help"}).code, 0);
}

TEST(CliCriticalLevel, Examples) {
  auto r = run({"critical-level", "--swo", "average", "--profile", "1 2 3", "--lo", "-10", "--hi", "10", "--tol",
                "1e-9"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "c=2\n");
  r = run({"critical-level", "--swo", "total", "--profile", "5"});
  EXPECT_EQ(r.out, "c=0\n");
  r = run({"critical-level", "--swo", "leximin", "--profile", "1 5"});
  EXPECT_EQ(r.out, "c=5\n");
}

TEST(CliCriticalLevel, NotFoundAndUsage) {
  auto r = run({"critical-level", "--swo", "theorem7", "--profile", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out.rfind("NONE ", 0), 0u);
  EXPECT_NE(r.out.find("no sign change"), std::string::npos);
  EXPECT_EQ(run({"critical-level", "--swo", "total", "--profile", "1", "--lo", "2", "--hi", "2"}).code, 64);
  EXPECT_EQ(run({"critical-level", "--swo", "total"}).code, 64);
}

TEST(CliAxioms, Examples) {
  auto r = run({"axioms", "--swo", "average", "--axiom", "AvoidSadistic", "--samples", "100000", "--seed", "7"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("AvoidSadistic"), std::string::npos);
  EXPECT_NE(r.out.find("s = (-1)"), std::string::npos);
  EXPECT_NE(r.out.find("Pass is sampling evidence only"), std::string::npos);

  r = run({"axioms", "--swo", "total", "--axiom", "Anonymity", "--samples", "10", "--seed", "1"});
  EXPECT_EQ(r.code, 0);

  EXPECT_EQ(run({"axioms", "--swo", "total", "--axiom", "Nope"}).code, 64);
  EXPECT_EQ(run({"axioms", "--swo", "total", "--samples", "0"}).code, 64);
  EXPECT_EQ(run({"axioms", "--swo", "total", "--samples", "ten"}).code, 64);
}

TEST(CliAxioms, InconclusiveExitCode) {
  // Theorem 7 has no critical level, so the search exhausts its bracket.
  const auto r = run({"axioms", "--swo", "theorem7", "--axiom", "WeakExistenceOfCriticalLevels", "--samples", "5"});
  EXPECT_EQ(r.code, 2);
}

TEST(CliAxioms, Theorem2AllRows) {
  TempDir dir;
  const auto json_path = (dir / "t2.json").string();
  const auto r = run({"axioms", "--swo", "theorem2", "--axiom", "all", "--samples", "20000", "--seed", "7", "--json",
                      json_path});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(slurp(json_path));
  EXPECT_EQ(j.at("schema_version"), "1");
  EXPECT_EQ(j.at("command"), "axioms");
  EXPECT_FALSE(j.contains("wall_seconds"));
  std::map<std::string, std::string> status;
  for (const auto& row : j.at("rows")) status[row.at("axiom")] = row.at("status");
  EXPECT_EQ(status.size(), std::size(popethics::kAllProbes));
  for (const char* a : {"Anonymity", "StrongPareto", "PigouDalton", "AvoidSadistic", "AvoidRepugnant"}) {
    EXPECT_EQ(status.at(a), "pass") << a;
  }
  EXPECT_EQ(status.at("MonotoneZeroAddition"), "fail");
}

TEST(CliMatrix, IntroConclusions) {
  TempDir dir;
  const auto csv_path = (dir / "m.csv").string();
  const auto r = run({"matrix", "--swos", "total,average", "--samples", "2000", "--csv", csv_path});
  EXPECT_EQ(r.code, 1);
  std::istringstream csv(slurp(csv_path));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "swo,axiom,status,samples,witness_digest");
  std::map<std::string, std::string> cells;
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string swo, axiom, status;
    std::getline(ss, swo, ',');
    std::getline(ss, axiom, ',');
    std::getline(ss, status, ',');
    cells[swo + "/" + axiom] = status;
  }
  EXPECT_EQ(rows, 2 * static_cast<int>(std::size(popethics::kAllProbes)));
  for (popethics::AxiomId a : popethics::kAllAxioms) {
    EXPECT_EQ(cells.at("total/" + std::string(popethics::to_string(a))), "pass") << popethics::to_string(a);
  }
  EXPECT_EQ(cells.at("total/AvoidRepugnant"), "fail");
  EXPECT_EQ(cells.at("average/AvoidSadistic"), "fail");
}

TEST(CliMatrix, DeterministicAcrossThreadCounts) {
  TempDir dir;
  const auto a = (dir / "a.json").string();
  const auto b = (dir / "b.json").string();
  EXPECT_EQ(run({"matrix", "--swos", "all", "--samples", "1000", "--seed", "42", "--threads", "1", "--json", a}).code,
            1);
  EXPECT_EQ(run({"matrix", "--swos", "all", "--samples", "1000", "--seed", "42", "--threads", "6", "--json", b}).code,
            1);
  EXPECT_EQ(slurp(a), slurp(b));
  // Rows of `axioms` use the same per-cell seeds.
  const auto c = (dir / "c.json").string();
  run({"axioms", "--swo", "theorem3", "--samples", "1000", "--seed", "42", "--json", c});
  const auto matrix = nlohmann::json::parse(slurp(a));
  const auto single = nlohmann::json::parse(slurp(c));
  std::size_t matched = 0;
  for (const auto& row : matrix.at("rows")) {
    if (row.at("swo") != "theorem3") continue;
    EXPECT_EQ(row, single.at("rows").at(matched));
    ++matched;
  }
  EXPECT_EQ(matched, single.at("rows").size());
}

TEST(CliMatrix, TimingIsOptIn) {
  TempDir dir;
  const auto a = (dir / "a.json").string();
  run({"matrix", "--swos", "total", "--samples", "10", "--json", a, "--timing"});
  EXPECT_TRUE(nlohmann::json::parse(slurp(a)).contains("wall_seconds"));
}

TEST(CliMatrix, UsageErrors) {
  EXPECT_EQ(run({"matrix", "--swos", ""}).code, 64);
  EXPECT_EQ(run({"matrix", "--swos", ","}).code, 64);
  EXPECT_EQ(run({"matrix", "--swos", "total,maximin"}).code, 64);
  EXPECT_EQ(run({"matrix"}).code, 64);
}

TEST(CliWitness, Examples) {
  auto r = run({"witness", "--theorem", "1", "--swo", "total", "--u", "10*10", "--epsilon", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("population = 101"), std::string::npos);
  EXPECT_NE(r.out.find("chain completed"), std::string::npos);

  r = run({"witness", "--theorem", "1", "--swo", "theorem2", "--u", "100 100", "--epsilon", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("broke at step 1"), std::string::npos);
  EXPECT_NE(r.out.find("1.57079632679"), std::string::npos);

  r = run({"witness", "--theorem", "lemma2", "--swo", "average"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("s = (-1)"), std::string::npos);

  r = run({"witness", "--theorem", "4", "--swo", "clgu", "--c", "1", "--u", "2 2", "--v", "5 5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k_prime = 7"), std::string::npos);

  r = run({"witness", "--theorem", "prop1", "--swo", "clgu", "--c", "10", "--epsilon", "0.5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("BETTER"), std::string::npos);

  EXPECT_EQ(run({"witness", "--theorem", "lemma3", "--swo", "total", "--samples", "500"}).code, 0);
}

TEST(CliWitness, JsonReport) {
  TempDir dir;
  const auto path = (dir / "w.json").string();
  run({"witness", "--theorem", "4", "--swo", "leximin", "--u", "1 5", "--v", "3 3", "--json", path});
  const auto j = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(j.at("rows")[0].at("broke_at"), 3);
  EXPECT_EQ(j.at("rows")[0].at("theorem"), "4");
}

TEST(CliWitness, UsageErrors) {
  EXPECT_EQ(run({"witness", "--theorem", "5", "--swo", "total"}).code, 64);
  EXPECT_EQ(run({"witness", "--theorem", "1", "--swo", "total", "--u", "1 -1"}).code, 64);
  EXPECT_EQ(run({"witness", "--theorem", "1", "--swo", "total", "--epsilon", "0"}).code, 64);
  EXPECT_EQ(run({"witness", "--swo", "total"}).code, 64);
}
