#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fuzzyset {

/**
 * An element of the superstructure over a finite set of named atoms.
 *
 * Three node kinds make up canonical expressions:
 *   - Empty              the empty set
 *   - Braced(atom, n)    the atom wrapped in n braces; n = 0 is the bare atom,
 *                        negative n is a formal unbracing of the atom
 *   - SetOf(elements)    a finite set of expressions
 *
 * A fourth kind, Nested(expr, n), attaches a level annotation to an arbitrary
 * expression. It only exists in raw input to normalize() and never survives it.
 *
 * Canonical form: no Nested nodes; a SetOf has at least two elements or a
 * single non-Braced element; elements are distinct and sorted by
 * (depth, printed form). Values are immutable once built.
 */
class SetExpr {
 public:
  enum class Kind { Empty, Braced, SetOf, Nested };

  static SetExpr empty();
  static SetExpr braced(std::string atom, int level = 0);
  /// Raw set node, kept exactly as given. Use make_set() for a canonical set.
  static SetExpr set_of(std::vector<SetExpr> elements);
  static SetExpr nested(SetExpr inner, int level);

  Kind kind() const noexcept;
  bool is_empty() const noexcept { return kind() == Kind::Empty; }
  bool is_braced() const noexcept { return kind() == Kind::Braced; }
  bool is_set() const noexcept { return kind() == Kind::SetOf; }
  bool is_nested() const noexcept { return kind() == Kind::Nested; }

  /// Atom name of a Braced node.
  const std::string& atom() const;
  /// Level of a Braced or Nested node.
  int level() const;
  /// Elements of a SetOf node.
  std::span<const SetExpr> elements() const;
  /// Operand of a Nested node.
  const SetExpr& inner() const;

  friend bool operator==(const SetExpr& lhs, const SetExpr& rhs);

 private:
  struct EmptyNode {};
  struct BracedNode {
    std::string atom;
    int level;
  };
  struct SetNode {
    std::vector<SetExpr> elements;
  };
  struct NestedNode {
    std::shared_ptr<const SetExpr> inner;
    int level;
  };

  using Node = std::variant<EmptyNode, BracedNode, SetNode, NestedNode>;

  explicit SetExpr(Node node) : node_(std::move(node)) {}

  Node node_;
};

/// Ordered list of distinct atom names.
class AtomUniverse {
 public:
  AtomUniverse() = default;
  /// Throws UniverseError on a duplicate or malformed name.
  explicit AtomUniverse(std::vector<std::string> atoms);

  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  bool contains(std::string_view atom) const noexcept;

  friend bool operator==(const AtomUniverse&, const AtomUniverse&) = default;

 private:
  std::vector<std::string> atoms_;
};

/// Identifier rule for atoms: [A-Za-z_][A-Za-z0-9_]*, excluding the keyword "empty".
bool is_valid_atom_name(std::string_view name) noexcept;

/**
 * Parses the brace notation:
 *
 *   expr := "∅" | "empty" | ATOM | "{" ATOM "}" "^" "(" INT ")" | "{" [expr ("," expr)*] "}"
 *
 * Whitespace is insignificant. Returns the canonical form. Throws SyntaxError
 * (with byte offset) on malformed text and LevelError when "^(n)" follows
 * anything other than a single braced atom.
 */
SetExpr parse_expr(std::string_view text);

/// Deterministic rendering: "∅", "x", "{x}", "{x}^(n)" for other levels, "{a,b}" for sets.
std::string print_expr(const SetExpr& e);

/// Canonical form of any raw expression. Throws LevelError for a negative
/// level applied to something that is not a braced atom.
SetExpr normalize(const SetExpr& e);

bool is_canonical(const SetExpr& e);

/// Canonical set with the given elements.
SetExpr make_set(std::vector<SetExpr> elements);

/// Brace depth: Braced(a, n) has max(n, 0), Empty has 1, a set is one more than its deepest element.
int depth(const SetExpr& e);

/// Sorted, de-duplicated names of all atoms occurring in e.
std::vector<std::string> atoms_of(const SetExpr& e);

/// True iff every atom occurring in e belongs to the universe.
bool in_superstructure(const SetExpr& e, const AtomUniverse& universe);

/// Total order used inside canonical sets: depth first, then printed form.
bool canonical_less(const SetExpr& lhs, const SetExpr& rhs);

}  // namespace fuzzyset
