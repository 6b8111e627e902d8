#include "fuzzyset/set_expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <utility>

#include "fuzzyset/errors.hpp"

namespace fuzzyset {

namespace {

constexpr std::string_view kEmptySymbol = "\xE2\x88\x85";  // U+2205
constexpr std::string_view kEmptyKeyword = "empty";
constexpr int kMaxNesting = 4096;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// ---------------------------------------------------------------------------
// SetExpr

SetExpr SetExpr::empty() { return SetExpr(EmptyNode{}); }

SetExpr SetExpr::braced(std::string atom, int level) { return SetExpr(BracedNode{std::move(atom), level}); }

SetExpr SetExpr::set_of(std::vector<SetExpr> elements) { return SetExpr(SetNode{std::move(elements)}); }

SetExpr SetExpr::nested(SetExpr inner, int level) {
  return SetExpr(NestedNode{std::make_shared<const SetExpr>(std::move(inner)), level});
}

SetExpr::Kind SetExpr::kind() const noexcept { return static_cast<Kind>(node_.index()); }

const std::string& SetExpr::atom() const {
  if (const auto* b = std::get_if<BracedNode>(&node_)) return b->atom;
  throw std::logic_error("SetExpr::atom on a non-braced node");
}

int SetExpr::level() const {
  if (const auto* b = std::get_if<BracedNode>(&node_)) return b->level;
  if (const auto* n = std::get_if<NestedNode>(&node_)) return n->level;
  throw std::logic_error("SetExpr::level on a node without a level");
}

std::span<const SetExpr> SetExpr::elements() const {
  if (const auto* s = std::get_if<SetNode>(&node_)) return s->elements;
  throw std::logic_error("SetExpr::elements on a non-set node");
}

const SetExpr& SetExpr::inner() const {
  if (const auto* n = std::get_if<NestedNode>(&node_)) return *n->inner;
  throw std::logic_error("SetExpr::inner on a non-nested node");
}

bool operator==(const SetExpr& lhs, const SetExpr& rhs) {
  if (lhs.node_.index() != rhs.node_.index()) return false;
  return std::visit(
      overloaded{
          [](const SetExpr::EmptyNode&) { return true; },
          [&](const SetExpr::BracedNode& a) {
            const auto& b = std::get<SetExpr::BracedNode>(rhs.node_);
            return a.level == b.level && a.atom == b.atom;
          },
          [&](const SetExpr::SetNode& a) { return a.elements == std::get<SetExpr::SetNode>(rhs.node_).elements; },
          [&](const SetExpr::NestedNode& a) {
            const auto& b = std::get<SetExpr::NestedNode>(rhs.node_);
            return a.level == b.level && *a.inner == *b.inner;
          },
      },
      lhs.node_);
}

// ---------------------------------------------------------------------------
// AtomUniverse

bool is_valid_atom_name(std::string_view name) noexcept {
  if (name.empty() || name == kEmptyKeyword) return false;
  auto ch = static_cast<unsigned char>(name.front());
  if (!std::isalpha(ch) && ch != '_') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

AtomUniverse::AtomUniverse(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  std::set<std::string_view> seen;
  for (const auto& a : atoms_) {
    if (!is_valid_atom_name(a)) throw UniverseError("invalid atom name '" + a + "'");
    if (!seen.insert(a).second) throw UniverseError("duplicate atom '" + a + "'");
  }
}

bool AtomUniverse::contains(std::string_view atom) const noexcept {
  return std::find(atoms_.begin(), atoms_.end(), atom) != atoms_.end();
}

// ---------------------------------------------------------------------------
// Printing and ordering

namespace {

void print_into(const SetExpr& e, std::string& out) {
  switch (e.kind()) {
    case SetExpr::Kind::Empty:
      out += kEmptySymbol;
      break;
    case SetExpr::Kind::Braced:
      if (e.level() == 0) {
        out += e.atom();
      } else {
        out += '{';
        out += e.atom();
        out += '}';
        if (e.level() != 1) {
          out += "^(";
          out += std::to_string(e.level());
          out += ')';
        }
      }
      break;
    case SetExpr::Kind::SetOf: {
      out += '{';
      bool first = true;
      for (const auto& el : e.elements()) {
        if (!first) out += ',';
        first = false;
        print_into(el, out);
      }
      out += '}';
      break;
    }
    case SetExpr::Kind::Nested:
      // Not part of the grammar; rendered for diagnostics only.
      out += '(';
      print_into(e.inner(), out);
      out += ")^(";
      out += std::to_string(e.level());
      out += ')';
      break;
  }
}

struct SortKey {
  int depth;
  std::string text;

  auto operator<=>(const SortKey&) const = default;
};

SortKey sort_key(const SetExpr& e) { return {depth(e), print_expr(e)}; }

}  // namespace

std::string print_expr(const SetExpr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

int depth(const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Empty:
      return 1;
    case SetExpr::Kind::Braced:
      return std::max(e.level(), 0);
    case SetExpr::Kind::SetOf: {
      int d = 0;
      for (const auto& el : e.elements()) d = std::max(d, depth(el));
      return d + 1;
    }
    case SetExpr::Kind::Nested:
      return std::max(depth(e.inner()) + e.level(), 0);
  }
  return 0;
}

bool canonical_less(const SetExpr& lhs, const SetExpr& rhs) { return sort_key(lhs) < sort_key(rhs); }

// ---------------------------------------------------------------------------
// Normalization

namespace {

SetExpr canonical_singleton(SetExpr e) {
  if (e.is_braced()) return SetExpr::braced(e.atom(), e.level() + 1);
  std::vector<SetExpr> one;
  one.push_back(std::move(e));
  return SetExpr::set_of(std::move(one));
}

SetExpr canonical_set(std::vector<SetExpr> normalized) {
  std::vector<std::pair<SortKey, SetExpr>> keyed;
  keyed.reserve(normalized.size());
  for (auto& el : normalized) {
    auto key = sort_key(el);
    keyed.emplace_back(std::move(key), std::move(el));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // Equal canonical expressions print identically, so duplicates are adjacent.
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());

  if (keyed.empty()) return SetExpr::empty();
  if (keyed.size() == 1) return canonical_singleton(std::move(keyed.front().second));

  std::vector<SetExpr> elements;
  elements.reserve(keyed.size());
  for (auto& [key, el] : keyed) elements.push_back(std::move(el));
  return SetExpr::set_of(std::move(elements));
}

}  // namespace

SetExpr normalize(const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Empty:
    case SetExpr::Kind::Braced:
      return e;
    case SetExpr::Kind::SetOf: {
      std::vector<SetExpr> children;
      children.reserve(e.elements().size());
      for (const auto& el : e.elements()) children.push_back(normalize(el));
      return canonical_set(std::move(children));
    }
    case SetExpr::Kind::Nested: {
      SetExpr inner = normalize(e.inner());
      const int n = e.level();
      if (inner.is_braced()) return SetExpr::braced(inner.atom(), inner.level() + n);
      if (n < 0) {
        throw LevelError("negative level " + std::to_string(n) + " applied to non-atom " + print_expr(inner));
      }
      for (int i = 0; i < n; ++i) inner = canonical_singleton(std::move(inner));
      return inner;
    }
  }
  return e;
}

bool is_canonical(const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Empty:
      return true;
    case SetExpr::Kind::Braced:
      return is_valid_atom_name(e.atom());
    case SetExpr::Kind::Nested:
      return false;
    case SetExpr::Kind::SetOf: {
      auto els = e.elements();
      if (els.empty()) return false;
      if (els.size() == 1 && els.front().is_braced()) return false;
      std::optional<SortKey> prev;
      for (const auto& el : els) {
        if (!is_canonical(el)) return false;
        auto key = sort_key(el);
        if (prev && !(*prev < key)) return false;
        prev = std::move(key);
      }
      return true;
    }
  }
  return false;
}

SetExpr make_set(std::vector<SetExpr> elements) { return normalize(SetExpr::set_of(std::move(elements))); }

// ---------------------------------------------------------------------------
// Atoms and the superstructure

namespace {

void collect_atoms(const SetExpr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case SetExpr::Kind::Empty:
      break;
    case SetExpr::Kind::Braced:
      out.insert(e.atom());
      break;
    case SetExpr::Kind::SetOf:
      for (const auto& el : e.elements()) collect_atoms(el, out);
      break;
    case SetExpr::Kind::Nested:
      collect_atoms(e.inner(), out);
      break;
  }
}

}  // namespace

std::vector<std::string> atoms_of(const SetExpr& e) {
  std::set<std::string> atoms;
  collect_atoms(e, atoms);
  return {atoms.begin(), atoms.end()};
}

bool in_superstructure(const SetExpr& e, const AtomUniverse& universe) {
  switch (e.kind()) {
    case SetExpr::Kind::Empty:
      return true;
    case SetExpr::Kind::Braced:
      return universe.contains(e.atom());
    case SetExpr::Kind::SetOf:
      return std::all_of(e.elements().begin(), e.elements().end(),
                         [&](const SetExpr& el) { return in_superstructure(el, universe); });
    case SetExpr::Kind::Nested:
      return in_superstructure(e.inner(), universe);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SetExpr parse() {
    SetExpr e = parse_expr(0);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return normalize(e);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool starts_ident() const {
    if (pos_ >= text_.size()) return false;
    auto ch = static_cast<unsigned char>(text_[pos_]);
    return std::isalpha(ch) || ch == '_';
  }

  std::string_view ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      auto ch = static_cast<unsigned char>(text_[pos_]);
      if (!std::isalnum(ch) && ch != '_') break;
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '+') ++pos_;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{}) {
      pos_ = start;
      fail("expected integer level");
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  SetExpr parse_expr(int nesting) {
    if (nesting > kMaxNesting) fail("nesting too deep");
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");

    if (text_.substr(pos_).starts_with(kEmptySymbol)) {
      pos_ += kEmptySymbol.size();
      return SetExpr::empty();
    }
    if (starts_ident()) {
      auto name = ident();
      if (name == kEmptyKeyword) return SetExpr::empty();
      return SetExpr::braced(std::string(name), 0);
    }
    if (text_[pos_] == '{') return parse_braces(nesting);
    fail("expected expression");
  }

  SetExpr parse_braces(int nesting) {
    ++pos_;  // '{'
    std::vector<SetExpr> elements;
    bool single_bare_atom = false;
    if (!at('}')) {
      skip_ws();
      const std::size_t first_start = pos_;
      elements.push_back(parse_expr(nesting + 1));
      single_bare_atom = elements.back().is_braced() && starts_ident_at(first_start);
      while (at(',')) {
        ++pos_;
        elements.push_back(parse_expr(nesting + 1));
        single_bare_atom = false;
      }
    }
    expect('}');

    if (!at('^')) return SetExpr::set_of(std::move(elements));

    const std::size_t caret = pos_;
    if (!single_bare_atom) {
      throw LevelError("level annotation '^(n)' applied to a non-atom at byte " + std::to_string(caret));
    }
    ++pos_;
    expect('(');
    int level = integer();
    expect(')');
    return SetExpr::braced(elements.front().atom(), level);
  }

  bool starts_ident_at(std::size_t p) const {
    if (p >= text_.size()) return false;
    auto ch = static_cast<unsigned char>(text_[p]);
    return std::isalpha(ch) || ch == '_';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace fuzzyset
