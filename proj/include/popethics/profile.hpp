#pragma once

// Well-being profiles of variable population size, the n*x construction
// notation, and the primitive statistics every ordering is built from.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace popethics {

/// Raised when a profile would have no individuals.
class EmptyProfileError : public std::invalid_argument {
 public:
  EmptyProfileError() : std::invalid_argument("profile must contain at least one individual") {}
};

/// Malformed profile text. `token_index` is 1-based; `offset` is the byte
/// position of the token in the input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t token_index, std::size_t offset)
      : std::runtime_error(std::move(message)), token_index_(token_index), offset_(offset) {}

  std::size_t token_index() const noexcept { return token_index_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t token_index_;
  std::size_t offset_;
};

/// Outcome of comparing a left profile against a right one.
enum class Verdict { Better, Worse, Indifferent };

/// The verdict obtained by swapping the arguments.
constexpr Verdict inverse(Verdict v) noexcept {
  switch (v) {
    case Verdict::Better: return Verdict::Worse;
    case Verdict::Worse: return Verdict::Better;
    case Verdict::Indifferent: return Verdict::Indifferent;
  }
  return Verdict::Indifferent;
}

/// Left is at least as good as right.
constexpr bool weakly_better(Verdict v) noexcept { return v != Verdict::Worse; }

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Better: return "BETTER";
    case Verdict::Worse: return "WORSE";
    case Verdict::Indifferent: return "INDIFFERENT";
  }
  return "?";
}

/// A nonempty finite sequence of finite well-being levels, one per person.
/// Immutable once built.
class Profile {
 public:
  explicit Profile(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw EmptyProfileError();
    for (double x : levels_) {
      if (!std::isfinite(x)) throw std::invalid_argument("profile levels must be finite");
    }
  }

  Profile(std::initializer_list<double> levels) : Profile(std::vector<double>(levels)) {}

  std::size_t size() const noexcept { return levels_.size(); }
  std::span<const double> levels() const noexcept { return levels_; }
  double operator[](std::size_t i) const { return levels_[i]; }
  auto begin() const noexcept { return levels_.begin(); }
  auto end() const noexcept { return levels_.end(); }

  double min() const { return *std::min_element(levels_.begin(), levels_.end()); }
  double max() const { return *std::max_element(levels_.begin(), levels_.end()); }

  bool all_positive() const {
    return std::all_of(levels_.begin(), levels_.end(), [](double x) { return x > 0.0; });
  }
  bool all_negative() const {
    return std::all_of(levels_.begin(), levels_.end(), [](double x) { return x < 0.0; });
  }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<double> levels_;
};

/// m copies of x.
inline Profile replicate(std::size_t m, double x) {
  if (m == 0) throw std::invalid_argument("replicate: population size must be positive");
  return Profile(std::vector<double>(m, x));
}

/// Levels of `a` followed by levels of `b`.
inline Profile concat(const Profile& a, const Profile& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return Profile(std::move(out));
}

inline Profile concat(const Profile& a, const Profile& b, const Profile& c) {
  return concat(concat(a, b), c);
}

inline Profile sorted_ascending(const Profile& p) {
  std::vector<double> out(p.begin(), p.end());
  std::stable_sort(out.begin(), out.end());
  return Profile(std::move(out));
}

inline double sum(const Profile& p) { return std::accumulate(p.begin(), p.end(), 0.0); }

/// Arithmetic mean. Equal levels return that level exactly.
inline double mean(const Profile& p) {
  const double first = p[0];
  if (std::all_of(p.begin(), p.end(), [first](double x) { return x == first; })) return first;
  return sum(p) / static_cast<double>(p.size());
}

namespace detail {

// exp(mean(log|x|)); callers guarantee every level is nonzero.
inline double log_domain_geomean_abs(const Profile& p) {
  double acc = 0.0;
  for (double x : p) acc += std::log(std::fabs(x));
  return std::exp(acc / static_cast<double>(p.size()));
}

}  // namespace detail

/// n-th root of the product of the positive parts. A single non-positive
/// level zeroes the product, so the result is exactly 0 in that case.
inline double geomean_positive_part(const Profile& p) {
  if (!p.all_positive()) return 0.0;
  const double first = p[0];
  if (std::all_of(p.begin(), p.end(), [first](double x) { return x == first; })) return first;
  return detail::log_domain_geomean_abs(p);
}

/// n-th root of the product of |negative parts|; 0 unless every level is
/// strictly negative. The sign is applied by the ordering that uses it.
inline double geomean_negative_part_abs(const Profile& p) {
  if (!p.all_negative()) return 0.0;
  const double first = p[0];
  if (std::all_of(p.begin(), p.end(), [first](double x) { return x == first; })) return -first;
  return detail::log_domain_geomean_abs(p);
}

inline std::size_t count_positive(const Profile& p) {
  return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](double x) { return x > 0.0; }));
}

namespace detail {

inline bool parse_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  // from_chars would accept these spellings; the grammar does not.
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == 'e' || ch == 'E' ||
          ch == '+'))
      return false;
  }
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

inline bool parse_count(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v'; }

}  // namespace detail

/// Parses whitespace-separated tokens; each is a decimal real or `k*x`,
/// which expands to k copies of x. Decimal point is always '.'.
inline Profile parse_profile(std::string_view text) {
  std::vector<double> levels;
  std::size_t pos = 0;
  std::size_t token_index = 0;
  while (pos < text.size()) {
    while (pos < text.size() && detail::is_space(text[pos])) ++pos;
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    while (pos < text.size() && !detail::is_space(text[pos])) ++pos;
    const std::string_view token = text.substr(start, pos - start);
    ++token_index;

    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError("token " + std::to_string(token_index) + " '" + std::string(token) + "': " + why,
                        token_index, start);
    };

    const auto star = token.find('*');
    if (star == std::string_view::npos) {
      double x = 0.0;
      if (!detail::parse_real(token, x)) throw fail("not a finite decimal number");
      levels.push_back(x);
      continue;
    }
    std::size_t count = 0;
    double x = 0.0;
    if (!detail::parse_count(token.substr(0, star), count)) throw fail("replication count must be a positive integer");
    if (count == 0) throw fail("replication count must be positive");
    if (!detail::parse_real(token.substr(star + 1), x)) throw fail("not a finite decimal number");
    levels.insert(levels.end(), count, x);
  }
  if (levels.empty()) throw EmptyProfileError();
  return Profile(std::move(levels));
}

/// One profile per line; blank lines and lines starting with '#' are skipped.
inline std::vector<Profile> read_profiles(std::istream& in) {
  std::vector<Profile> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_profile(line));
  }
  return out;
}

/// Shortest decimal text that parses back to the same profile, runs of
/// equal levels collapsed into `k*x`.
inline std::string format_profile(const Profile& p) {
  auto shortest = [](double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
  };
  std::string out;
  std::size_t i = 0;
  while (i < p.size()) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    if (!out.empty()) out += ' ';
    if (j - i > 1) out += std::to_string(j - i) + "*";
    out += shortest(p[i]);
    i = j;
  }
  return out;
}

}  // namespace popethics
