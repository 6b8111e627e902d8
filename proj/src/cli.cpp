#include "fuzzyset/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "fuzzyset/errors.hpp"
#include "fuzzyset/fuzzy_set.hpp"
#include "fuzzyset/json_io.hpp"
#include "fuzzyset/level_map.hpp"
#include "fuzzyset/seq_codec.hpp"
#include "fuzzyset/set_expr.hpp"

namespace fuzzyset::cli {

namespace {

struct Output {
  bool json = false;
  int precision = 6;
  std::ostream* out = nullptr;

  std::string num(double v) const { return fmt::format("{:.{}f}", v, precision); }
  std::string sci(double v) const { return fmt::format("{:.3e}", v); }

  void emit(const Json& j) const { *out << dump_json(j) << '\n'; }
};

// ---------------------------------------------------------------------------
// Plain-text tables

std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

class Table {
 public:
  enum class Align { Left, Right };

  explicit Table(std::vector<std::pair<std::string, Align>> columns) : columns_(std::move(columns)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) width[c] = display_width(columns_[c].first);
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], display_width(row[c]));
    }
    std::vector<std::string> header;
    for (const auto& col : columns_) header.push_back(col.first);
    line(os, header, width);
    for (const auto& row : rows_) line(os, row, width);
  }

 private:
  void line(std::ostream& os, const std::vector<std::string>& cells, const std::vector<std::size_t>& width) const {
    std::string text;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) text += "  ";
      const std::string pad(width[c] - display_width(cells[c]), ' ');
      if (columns_[c].second == Align::Right) {
        text += pad + cells[c];
      } else {
        text += cells[c];
        if (c + 1 < cells.size()) text += pad;
      }
    }
    os << text << '\n';
  }

  std::vector<std::pair<std::string, Align>> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void print_fuzzy_set(const Output& o, const FuzzySet& set) {
  Table table({{"element", Table::Align::Left}, {"mu", Table::Align::Right}});
  for (const auto& [expr, mu] : set.elements()) table.add({print_expr(expr), o.num(mu)});
  table.print(*o.out);
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["label"] = r.label;
  j["computed"] = r.computed;
  j["expected"] = r.expected;
  j["abs_diff"] = r.abs_diff;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

void print_report(const Output& o, const VerificationReport& r) {
  *o.out << r.label << '\n'
         << "  computed  " << o.num(r.computed) << '\n'
         << "  expected  " << o.num(r.expected) << '\n'
         << "  abs_diff  " << o.sci(r.abs_diff) << '\n'
         << "  tolerance " << o.sci(r.tolerance) << '\n'
         << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
}

std::string join_indices(const std::vector<int>& indices) {
  std::string s;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(indices[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Randomized checks

/// Largest |card(power set) - 2^card(base)| over random flat fuzzy sets.
VerificationReport check_power_law(int trials, std::uint64_t seed, double tol, int max_atoms) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(0, max_atoms);
  std::uniform_real_distribution<double> mu_dist(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::pair<std::string, double>> memberships;
    const int n = size_dist(rng);
    for (int i = 0; i < n; ++i) memberships.emplace_back("x" + std::to_string(i + 1), mu_dist(rng));
    const auto report = verify_power_cardinality(make_flat_fuzzy_set(memberships), tol);
    worst = std::max(worst, report.abs_diff);
  }
  return VerificationReport::make("max |card(power set) - 2^card(base)|", worst, 0.0, tol);
}

/// Membership of ({x}^(first))^(second), built in two stages: the inner
/// membership becomes the base membership of a fresh atom.
double two_stage_membership(double u, int first, int second) {
  const double inner = propagate_membership(make_flat_fuzzy_set({{"x", u}}), SetExpr::braced("x", first));
  return propagate_membership(make_flat_fuzzy_set({{"y", inner}}), SetExpr::braced("y", second));
}

VerificationReport check_level_composition(int trials, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u_dist(0.0, 1.0);
  std::uniform_int_distribution<int> level_dist(-6, 6);
  double worst = 0.0;
  bool structural = true;
  for (int t = 0; t < trials; ++t) {
    double u = 0.0;
    while (u == 0.0) u = u_dist(rng);
    const int m = level_dist(rng);
    const int n = level_dist(rng);

    const SetExpr combined = SetExpr::braced("x", m + n);
    structural = structural && normalize(SetExpr::nested(SetExpr::braced("x", m), n)) == combined &&
                 normalize(SetExpr::nested(SetExpr::braced("x", n), m)) == combined;

    const double mn = two_stage_membership(u, m, n);
    const double nm = two_stage_membership(u, n, m);
    const double direct = propagate_membership(make_flat_fuzzy_set({{"x", u}}), combined);
    worst = std::max({worst, std::abs(mn - nm), std::abs(mn - direct), std::abs(nm - direct)});
  }
  auto report = VerificationReport::make("max pairwise difference of ({x}^(m))^(n), ({x}^(n))^(m), {x}^(m+n)",
                                         worst, 0.0, tol);
  if (!structural) {
    report.label += " [normal forms differ]";
    report.pass = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_parse(const Output& o, const std::string& text) {
  const SetExpr e = parse_expr(text);
  if (o.json) {
    Json j;
    j["canonical"] = print_expr(e);
    j["depth"] = depth(e);
    j["atoms"] = atoms_of(e);
    o.emit(j);
  } else {
    const auto atoms = atoms_of(e);
    std::string atom_list;
    for (const auto& a : atoms) atom_list += (atom_list.empty() ? "" : ", ") + a;
    *o.out << "canonical: " << print_expr(e) << '\n' << "depth:     " << depth(e) << '\n' << "atoms:     " << atom_list << '\n';
  }
  return kOk;
}

int cmd_propagate(const Output& o, const std::string& path, const std::vector<std::string>& texts) {
  const FuzzySet base = load_fuzzy_set(path);
  std::vector<SetExpr> exprs;
  for (const auto& t : texts) exprs.push_back(parse_expr(t));
  const FuzzySet built = construct_fuzzy_set(base, exprs);
  if (o.json) {
    Json j = to_json(built);
    j["card"] = scalar_cardinality(built);
    o.emit(j);
  } else {
    print_fuzzy_set(o, built);
    *o.out << "card: " << o.num(scalar_cardinality(built)) << '\n';
  }
  return kOk;
}

int cmd_card(const Output& o, const std::string& path) {
  const FuzzySet set = load_fuzzy_set(path);
  if (o.json) {
    Json j;
    j["size"] = set.size();
    j["card"] = scalar_cardinality(set);
    o.emit(j);
  } else {
    *o.out << "size: " << set.size() << '\n' << "card: " << o.num(scalar_cardinality(set)) << '\n';
  }
  return kOk;
}

int cmd_powerset(const Output& o, const std::string& path, bool verify, double tol, std::size_t cap) {
  const FuzzySet base = load_fuzzy_set(path);
  const FuzzySet power = fuzzy_power_set(base, cap);
  std::optional<VerificationReport> report;
  if (verify) report = verify_power_cardinality(base, tol, cap);

  if (o.json) {
    Json j;
    j["power_set"] = to_json(power);
    j["card"] = scalar_cardinality(power);
    if (report) j["report"] = report_json(*report);
    o.emit(j);
  } else {
    print_fuzzy_set(o, power);
    *o.out << "card: " << o.num(scalar_cardinality(power)) << '\n';
    if (report) print_report(o, *report);
  }
  return report && !report->pass ? kCheckFailed : kOk;
}

struct EncodeArgs {
  double value = 0.0;
  SolverConfig cfg;
};

int cmd_encode(const Output& o, const EncodeArgs& args) {
  const EncodeResult r = encode_traced(args.value, args.cfg);
  const auto& a = r.sequence;
  const double residual = r.steps.back().residual;
  if (o.json) {
    Json j = to_json(a);
    j["value"] = args.value;
    j["sequence"] = print_sequence(a);
    j["indices"] = a.one_indices();
    j["residual"] = residual;
    o.emit(j);
  } else {
    *o.out << "value:     " << o.num(args.value) << '\n'
           << "sequence:  " << print_sequence(a) << '\n'
           << "indices:   " << join_indices(a.one_indices()) << '\n'
           << "terms:     " << a.count_ones() << '\n'
           << "truncated: " << (a.truncated() ? "true" : "false") << '\n'
           << "residual:  " << o.sci(residual) << '\n';
  }
  return kOk;
}

BinarySequence read_sequence_argument(std::string text) {
  if (text == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError("sequence argument is not valid JSON");
    return sequence_from_json(j);
  }
  return parse_sequence(text);
}

int cmd_decode(const Output& o, const std::string& text, const std::string& atom, const SolverConfig& cfg) {
  const BinarySequence a = read_sequence_argument(text);
  const double w = decode(a, cfg);
  const FuzzySet set = expand_to_fuzzy(a, atom, cfg);
  if (o.json) {
    Json j;
    j["sequence"] = print_sequence(a);
    j["value"] = w;
    j["fuzzy_set"] = to_json(set);
    j["card"] = scalar_cardinality(set);
    o.emit(j);
  } else {
    *o.out << "sequence: " << print_sequence(a) << '\n' << "value:    " << o.num(w) << '\n';
    Table table({{"level", Table::Align::Right}, {"element", Table::Align::Left}, {"mu", Table::Align::Right}});
    for (const auto& [expr, mu] : set.elements()) table.add({std::to_string(expr.level()), print_expr(expr), o.num(mu)});
    table.print(*o.out);
    *o.out << "card:     " << o.num(scalar_cardinality(set)) << '\n';
  }
  return kOk;
}

struct RoundtripArgs {
  std::optional<double> value;
  int count = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  SolverConfig cfg;
};

int cmd_roundtrip(const Output& o, const RoundtripArgs& args) {
  std::vector<double> values;
  if (args.value) {
    values.push_back(*args.value);
  } else {
    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> dist(0.01, 0.99);
    for (int i = 0; i < args.count; ++i) values.push_back(dist(rng));
  }
  double worst = 0.0;
  std::size_t truncated = 0;
  for (double w : values) {
    const BinarySequence a = encode(w, args.cfg);
    truncated += a.truncated() ? 1 : 0;
    worst = std::max(worst, std::abs(decode(a, args.cfg) - w));
  }
  const auto report = VerificationReport::make("max |decode(encode(w)) - w|", worst, 0.0, args.tol);
  if (o.json) {
    Json j = report_json(report);
    j["samples"] = values.size();
    j["truncated"] = truncated;
    o.emit(j);
  } else {
    *o.out << "samples:   " << values.size() << '\n' << "truncated: " << truncated << '\n';
    print_report(o, report);
  }
  return report.pass ? kOk : kCheckFailed;
}

struct TheoremArgs {
  int id = 1;
  int trials = 100;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int max_atoms = 12;
};

int cmd_verify_theorem(const Output& o, const TheoremArgs& args) {
  const VerificationReport report =
      args.id == 1 ? check_power_law(args.trials, args.seed, args.tol.value_or(1e-9), args.max_atoms)
                   : check_level_composition(args.trials, args.seed, args.tol.value_or(1e-12));
  if (o.json) {
    Json j = report_json(report);
    j["theorem"] = args.id;
    j["trials"] = args.trials;
    j["seed"] = args.seed;
    o.emit(j);
  } else {
    *o.out << "trials: " << args.trials << "  seed: " << args.seed << '\n';
    print_report(o, report);
  }
  return report.pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// Worked examples

FuzzySet example_base(bool with_x4) {
  std::vector<std::pair<std::string, double>> m{{"x1", 0.2}, {"x2", 0.3}, {"x3", 0.5}};
  if (with_x4) m.emplace_back("x4", 1.0);
  return make_flat_fuzzy_set(m);
}

int example_propagation(const Output& o) {
  const FuzzySet base = example_base(true);
  const std::vector<SetExpr> universe{parse_expr("{empty, x1}"), parse_expr("{{x2},{x3}}"),
                                      parse_expr("{x1,{x2,{x3,{x4}}}}")};
  const FuzzySet built = construct_fuzzy_set(base, universe);
  if (o.json) {
    Json j;
    j["base"] = to_json(base);
    j["constructed"] = to_json(built);
    o.emit(j);
    return kOk;
  }
  *o.out << "base fuzzy set\n";
  print_fuzzy_set(o, base);
  *o.out << "\nconstructed fuzzy set\n";
  print_fuzzy_set(o, built);
  return kOk;
}

int example_power_set(const Output& o) {
  const FuzzySet base = example_base(false);
  const FuzzySet power = fuzzy_power_set(base);
  const auto report = verify_power_cardinality(base, 1e-12);
  if (o.json) {
    Json j;
    j["base"] = to_json(base);
    j["power_set"] = to_json(power);
    j["report"] = report_json(report);
    o.emit(j);
  } else {
    *o.out << "base fuzzy set (card " << o.num(scalar_cardinality(base)) << ")\n";
    print_fuzzy_set(o, base);
    *o.out << "\nfuzzy power set\n";
    print_fuzzy_set(o, power);
    *o.out << '\n';
    print_report(o, report);
  }
  return report.pass ? kOk : kCheckFailed;
}

int example_decode(const Output& o) {
  Json all = Json::array();
  bool first = true;
  for (const char* text : {"10|01", "|01001"}) {
    const BinarySequence a = parse_sequence(text);
    const FuzzySet set = expand_to_fuzzy(a, "x");
    const double w = decode(a);
    if (o.json) {
      Json j;
      j["sequence"] = print_sequence(a);
      j["value"] = w;
      j["fuzzy_set"] = to_json(set);
      j["card"] = scalar_cardinality(set);
      all.push_back(std::move(j));
      continue;
    }
    if (!first) *o.out << '\n';
    first = false;
    *o.out << "sequence: " << print_sequence(a) << '\n' << "value:    " << o.num(w) << '\n';
    print_fuzzy_set(o, set);
    *o.out << "card:     " << o.num(scalar_cardinality(set)) << '\n';
  }
  if (o.json) o.emit(all);
  return kOk;
}

int example_encode(const Output& o) {
  Json all = Json::array();
  bool first = true;
  for (double w : {0.3, 0.8}) {
    const EncodeResult r = encode_traced(w);
    const auto& a = r.sequence;
    const double check = series_cardinality(a, w);
    if (o.json) {
      Json j = to_json(a);
      j["value"] = w;
      j["sequence"] = print_sequence(a);
      j["indices"] = a.one_indices();
      j["series_at_value"] = check;
      all.push_back(std::move(j));
      continue;
    }
    if (!first) *o.out << '\n';
    first = false;
    *o.out << "value:     " << o.num(w) << '\n'
           << "sequence:  " << print_sequence(a) << '\n'
           << "indices:   " << join_indices(a.one_indices()) << '\n'
           << "terms:     " << a.count_ones() << '\n'
           << "truncated: " << (a.truncated() ? "true" : "false") << '\n'
           << "series:    " << o.num(check) << '\n';
  }
  if (o.json) o.emit(all);
  return kOk;
}

int cmd_examples(const Output& o, int id) {
  switch (id) {
    case 1:
      return example_propagation(o);
    case 2:
      return example_power_set(o);
    case 3:
      return example_decode(o);
    default:
      return example_encode(o);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct fuzzy sets over finite superstructures and encode membership values as binary sequences.",
               "fuzzyset"};
  app.require_subcommand(1);
  app.fallthrough();

  Output o;
  o.out = &out;
  app.add_flag("--json", o.json, "Emit machine-readable JSON");
  app.add_option("--precision", o.precision, "Decimals for floating-point output")->check(CLI::Range(0, 17));

  std::string expr_text;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a set expression and print its canonical form");
  parse_cmd->add_option("expr", expr_text, "Set expression, e.g. \"{x1,{x2}}\"")->required();

  std::string path;
  std::vector<std::string> exprs;
  auto* propagate_cmd = app.add_subcommand("propagate", "Membership of expressions built from a fuzzy set");
  propagate_cmd->add_option("fuzzyset", path, "Fuzzy set JSON file")->required();
  propagate_cmd->add_option("exprs", exprs, "Set expressions")->required();

  bool verify = false;
  double power_tol = 1e-9;
  std::size_t cap = kDefaultPowerSetCap;
  auto* powerset_cmd = app.add_subcommand("powerset", "Fuzzy set over the power set of a flat fuzzy set");
  powerset_cmd->add_option("fuzzyset", path, "Fuzzy set JSON file")->required();
  powerset_cmd->add_flag("--verify", verify, "Check card(power set) = 2^card(base)");
  powerset_cmd->add_option("--tol", power_tol, "Tolerance for --verify")->check(CLI::PositiveNumber);
  powerset_cmd->add_option("--cap", cap, "Maximum number of atoms")->check(CLI::Range(0, 30));

  auto* card_cmd = app.add_subcommand("card", "Scalar cardinality of a fuzzy set");
  card_cmd->add_option("fuzzyset", path, "Fuzzy set JSON file")->required();

  EncodeArgs enc;
  auto* encode_cmd = app.add_subcommand("encode", "Binary sequence for a membership value in (0,1]");
  encode_cmd->add_option("value", enc.value, "Membership value")->required();
  encode_cmd->add_option("--max-terms", enc.cfg.max_terms, "Maximum number of one-bits")->check(CLI::PositiveNumber);
  encode_cmd->add_option("--tol", enc.cfg.tol_residual, "Residual at which the expansion stops")
      ->check(CLI::PositiveNumber);
  encode_cmd->add_option("--max-index", enc.cfg.max_index, "Largest |k| searched")->check(CLI::PositiveNumber);

  std::string seq_text;
  std::string atom = "x";
  SolverConfig dec_cfg;
  auto* decode_cmd = app.add_subcommand("decode", "Membership value and fuzzy set of a binary sequence");
  decode_cmd->add_option("sequence", seq_text, "Sequence text such as \"10|01\", sequence JSON, or - for stdin")
      ->required();
  decode_cmd->add_option("--tol", dec_cfg.tol_root, "Root-finder tolerance")->check(CLI::PositiveNumber);
  decode_cmd->add_option("--atom", atom, "Atom name for the expanded fuzzy set");

  RoundtripArgs rt;
  double rt_value = 0.0;
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Check decode(encode(w)) = w");
  auto* rt_value_opt = roundtrip_cmd->add_option("--value", rt_value, "Single value to check");
  roundtrip_cmd->add_option("--count", rt.count, "Number of random values in (0.01, 0.99)")
      ->check(CLI::PositiveNumber)
      ->excludes(rt_value_opt);
  roundtrip_cmd->add_option("--seed", rt.seed, "Random seed");
  roundtrip_cmd->add_option("--tol", rt.tol, "Allowed roundtrip error")->check(CLI::PositiveNumber);
  roundtrip_cmd->add_option("--max-terms", rt.cfg.max_terms, "Maximum number of one-bits")->check(CLI::PositiveNumber);

  TheoremArgs th;
  double th_tol = 0.0;
  auto* theorem_cmd = app.add_subcommand("verify-theorem", "Randomized check of the power-set law (1) or level composition (2)");
  theorem_cmd->add_option("id", th.id, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  theorem_cmd->add_option("--trials", th.trials, "Number of random trials")->check(CLI::PositiveNumber);
  theorem_cmd->add_option("--seed", th.seed, "Random seed");
  auto* th_tol_opt = theorem_cmd->add_option("--tol", th_tol, "Tolerance")->check(CLI::PositiveNumber);
  theorem_cmd->add_option("--max-atoms", th.max_atoms, "Largest base size for check 1")->check(CLI::Range(0, 16));

  int example_id = 1;
  auto* examples_cmd = app.add_subcommand("examples", "Reproduce a worked example (1-4)");
  examples_cmd->add_option("id", example_id, "Example number")->required()->check(CLI::Range(1, 4));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(o, expr_text);
    if (propagate_cmd->parsed()) return cmd_propagate(o, path, exprs);
    if (powerset_cmd->parsed()) return cmd_powerset(o, path, verify, power_tol, cap);
    if (card_cmd->parsed()) return cmd_card(o, path);
    if (encode_cmd->parsed()) return cmd_encode(o, enc);
    if (decode_cmd->parsed()) return cmd_decode(o, seq_text, atom, dec_cfg);
    if (roundtrip_cmd->parsed()) {
      if (*rt_value_opt) rt.value = rt_value;
      return cmd_roundtrip(o, rt);
    }
    if (theorem_cmd->parsed()) {
      if (*th_tol_opt) th.tol = th_tol;
      return cmd_verify_theorem(o, th);
    }
    if (examples_cmd->parsed()) return cmd_examples(o, example_id);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace fuzzyset::cli
