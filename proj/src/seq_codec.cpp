#include "fuzzyset/seq_codec.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzyset/errors.hpp"

namespace fuzzyset {

BinarySequence::BinarySequence(int m_star, std::vector<std::uint8_t> bits, bool truncated)
    : m_star_(m_star), bits_(std::move(bits)), truncated_(truncated) {
  if (m_star_ > 0) throw InvariantError("start index must be <= 0");
  if (static_cast<long long>(bits_.size()) < 1LL - m_star_) throw InvariantError("bits must cover index 0");
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw InvariantError("bits must be 0 or 1");
  }
  if (bit(0) != 1) throw InvariantError("a_0 must be 1");
  if (bits_.front() != 1) throw InvariantError("the bit at the start index must be 1");
  if (!truncated_ && last_index() > 0 && bits_.back() != 1) {
    throw InvariantError("a finite sequence must not end in 0");
  }
}

int BinarySequence::bit(int k) const noexcept {
  if (k < m_star_ || k > last_index()) return 0;
  return bits_[static_cast<std::size_t>(k - m_star_)];
}

std::vector<int> BinarySequence::one_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(m_star_ + static_cast<int>(i));
  }
  return out;
}

std::size_t BinarySequence::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void SolverConfig::validate() const {
  if (!(tol_root > 0.0)) throw ConfigError("tol_root must be positive");
  if (!(tol_residual > 0.0)) throw ConfigError("tol_residual must be positive");
  if (max_terms < 1) throw ConfigError("max_terms must be at least 1");
  if (max_index < 1) throw ConfigError("max_index must be at least 1");
}

// ---------------------------------------------------------------------------
// Text form

namespace {

constexpr std::string_view kEllipsis = "\xE2\x80\xA6";  // U+2026

}  // namespace

BinarySequence parse_sequence(std::string_view text) {
  // Locate the meaningful span: strip separators, then an optional "(...)".
  auto is_sep = [](char c) { return c == ' ' || c == ',' || c == '\t' || c == '\n' || c == '\r'; };
  std::size_t begin = 0;
  std::size_t end = text.size();
  auto trim = [&] {
    while (begin < end && is_sep(text[begin])) ++begin;
    while (end > begin && is_sep(text[end - 1])) --end;
  };

  trim();
  bool parens = false;
  if (begin < end && text[begin] == '(') {
    parens = true;
    ++begin;
  }
  if (parens) {
    trim();
    if (end == begin || text[end - 1] != ')') throw SyntaxError("missing ')'", end);
    --end;
  }
  trim();

  bool truncated = false;
  auto strip_suffix = [&](std::string_view suffix) {
    if (text.substr(begin, end - begin).ends_with(suffix)) {
      end -= suffix.size();
      truncated = true;
      trim();
    }
  };
  strip_suffix(kEllipsis);
  if (!truncated) strip_suffix("...");

  std::vector<std::uint8_t> left;
  std::vector<std::uint8_t> right;
  bool seen_bar = false;
  for (std::size_t i = begin; i < end; ++i) {
    const char c = text[i];
    if (is_sep(c)) continue;
    if (c == '|') {
      if (seen_bar) throw SyntaxError("second '|'", i);
      seen_bar = true;
    } else if (c == '0' || c == '1') {
      (seen_bar ? right : left).push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  if (!seen_bar) throw SyntaxError("missing '|' marking a_0", end);
  if (!left.empty() && left.front() == 0) throw InvariantError("leftmost bit before '|' must be 1");

  const int m_star = -static_cast<int>(left.size());
  std::vector<std::uint8_t> bits = std::move(left);
  bits.push_back(1);
  bits.insert(bits.end(), right.begin(), right.end());
  return BinarySequence(m_star, std::move(bits), truncated);
}

std::string print_sequence(const BinarySequence& a) {
  std::string out;
  for (int k = a.m_star(); k <= a.last_index(); ++k) {
    if (k == 0) {
      out += '|';
    } else {
      out += a.bit(k) ? '1' : '0';
    }
  }
  if (a.truncated()) out += kEllipsis;
  return out;
}

std::vector<SetExpr> sequence_to_universe(const BinarySequence& a, const std::string& atom) {
  std::vector<SetExpr> out;
  for (int k : a.one_indices()) out.push_back(SetExpr::braced(atom, k));
  return out;
}

// ---------------------------------------------------------------------------
// Cardinality series and root finding

namespace {

/// u_k(t) for k = m_star..N, indexed from m_star.
std::vector<double> level_values(const BinarySequence& a, double t) {
  std::vector<double> u(a.bits().size());
  const auto at = [&](int k) -> double& { return u[static_cast<std::size_t>(k - a.m_star())]; };
  double v = t;
  for (int k = 0; k <= a.last_index(); ++k) {
    at(k) = v;
    v = raise_level(v);
  }
  v = t;
  for (int k = -1; k >= a.m_star(); --k) {
    v = lower_level(v);
    at(k) = v;
  }
  return u;
}

}  // namespace

double series_cardinality(const BinarySequence& a, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw RangeError("series argument outside [0,1]");
  if (t == 0.0 || t == 1.0) return t * static_cast<double>(a.count_ones());
  const auto u = level_values(a, t);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (a.bits()[i]) sum += u[i];
  }
  return sum;
}

double decode(const BinarySequence& a, const SolverConfig& cfg) {
  cfg.validate();
  const double g_lo = series_cardinality(a, 0.0);
  const double g_hi = series_cardinality(a, 1.0);
  if (!(g_lo < 1.0 && g_hi >= 1.0)) throw ConfigError("cardinality series does not bracket 1 on [0,1]");
  if (g_hi == 1.0) return 1.0;

  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > cfg.tol_root; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (series_cardinality(a, mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Greedy encoder

EncodeResult encode_traced(double w, const SolverConfig& cfg) {
  cfg.validate();
  if (!(w > 0.0 && w <= 1.0)) throw RangeError("value to encode must lie in (0,1]");

  EncodeResult result;
  double s = w - 1.0;
  result.steps.push_back({0, s});
  if (std::abs(s) <= cfg.tol_residual) return result;

  const auto u = [w](int k) { return iterate_level(w, k); };
  const auto past_cap = [&](int k) {
    if (std::abs(k) > cfg.max_index) {
      throw IndexCapExceeded("index search for w = " + std::to_string(w) + " passed " + std::to_string(cfg.max_index));
    }
  };

  // First index: s + u_k(w) is strictly decreasing in k, so scan from k = -1
  // downward while it stays <= 0, otherwise upward from k = 1 until it drops to <= 0.
  int index = 0;
  if (s + u(-1) <= 0.0) {
    int k = -1;
    while (s + u(k) <= 0.0) {
      --k;
      past_cap(k);
    }
    index = k + 1;
  } else {
    int k = 1;
    while (s + u(k) > 0.0) {
      ++k;
      past_cap(k);
    }
    index = k;
  }
  s += u(index);
  result.steps.push_back({index, s});

  int ones = 2;
  int lowest = std::min(index, 0);
  int highest = std::max(index, 0);
  bool truncated = false;
  while (std::abs(s) > cfg.tol_residual) {
    if (ones >= cfg.max_terms) {
      truncated = true;
      break;
    }
    int k = index + 1;
    if (k == 0) k = 1;
    while (s + u(k) > 0.0) {
      ++k;
      if (k == 0) k = 1;
      past_cap(k);
    }
    index = k;
    s += u(index);
    result.steps.push_back({index, s});
    ++ones;
    highest = std::max(highest, index);
  }

  std::vector<std::uint8_t> bits(static_cast<std::size_t>(highest - lowest + 1), 0);
  for (const auto& step : result.steps) bits[static_cast<std::size_t>(step.index - lowest)] = 1;
  result.sequence = BinarySequence(lowest, std::move(bits), truncated);
  return result;
}

BinarySequence encode(double w, const SolverConfig& cfg) { return encode_traced(w, cfg).sequence; }

FuzzySet expand_to_fuzzy(const BinarySequence& a, const std::string& atom, const SolverConfig& cfg) {
  const double w = decode(a, cfg);
  std::vector<Element> elements;
  for (int k : a.one_indices()) elements.push_back({SetExpr::braced(atom, k), iterate_level(w, k)});
  return FuzzySet(AtomUniverse({atom}), std::move(elements));
}

}  // namespace fuzzyset
