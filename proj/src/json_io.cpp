#include "fuzzyset/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fuzzyset/errors.hpp"

namespace fuzzyset {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const FuzzySet& set) {
  Json j;
  j["atoms"] = set.universe().atoms();
  Json elements = Json::array();
  for (const auto& [expr, mu] : set.elements()) {
    Json el;
    el["expr"] = print_expr(expr);
    el["mu"] = mu;
    elements.push_back(std::move(el));
  }
  j["elements"] = std::move(elements);
  return j;
}

FuzzySet fuzzy_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("elements")) {
    throw FormatError("fuzzy set JSON needs \"atoms\" and \"elements\"");
  }
  const auto& atoms_j = j.at("atoms");
  const auto& elements_j = j.at("elements");
  if (!atoms_j.is_array() || !elements_j.is_array()) throw FormatError("\"atoms\" and \"elements\" must be arrays");

  std::vector<std::string> atoms;
  for (const auto& a : atoms_j) {
    if (!a.is_string()) throw FormatError("atom names must be strings");
    atoms.push_back(a.get<std::string>());
  }

  std::vector<Element> elements;
  for (const auto& el : elements_j) {
    if (!el.is_object() || !el.contains("expr") || !el.contains("mu") || !el.at("expr").is_string() ||
        !el.at("mu").is_number()) {
      throw FormatError("each element needs a string \"expr\" and a numeric \"mu\"");
    }
    elements.push_back({parse_expr(el.at("expr").get<std::string>()), el.at("mu").get<double>()});
  }
  return FuzzySet(AtomUniverse(std::move(atoms)), std::move(elements));
}

Json to_json(const BinarySequence& a) {
  Json j;
  j["m_star"] = a.m_star();
  Json bits = Json::array();
  for (auto b : a.bits()) bits.push_back(static_cast<int>(b));
  j["bits"] = std::move(bits);
  j["truncated"] = a.truncated();
  return j;
}

BinarySequence sequence_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m_star") || !j.contains("bits")) {
    throw FormatError("sequence JSON needs \"m_star\" and \"bits\"");
  }
  if (!j.at("m_star").is_number_integer() || !j.at("bits").is_array()) {
    throw FormatError("\"m_star\" must be an integer and \"bits\" an array");
  }
  std::vector<std::uint8_t> bits;
  for (const auto& b : j.at("bits")) {
    if (!b.is_number_integer()) throw FormatError("bits must be 0 or 1");
    const auto v = b.get<long long>();
    if (v != 0 && v != 1) throw FormatError("bits must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(v));
  }
  bool truncated = false;
  if (j.contains("truncated")) {
    if (!j.at("truncated").is_boolean()) throw FormatError("\"truncated\" must be a boolean");
    truncated = j.at("truncated").get<bool>();
  }
  return BinarySequence(j.at("m_star").get<int>(), std::move(bits), truncated);
}

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(const Json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };

  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      const bool inline_items = std::all_of(j.begin(), j.end(), is_scalar);
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += pretty && inline_items ? ", " : ",";
        first = false;
        if (!inline_items) newline(depth + 1);
        write(item, indent, depth + 1, out);
      }
      if (!inline_items) newline(depth);
      out += ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += pretty ? ": " : ":";
        write(value, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      break;
    }
    default:
      out += j.dump();
      break;
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

FuzzySet load_fuzzy_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  Json j = Json::parse(text.str(), nullptr, false);
  if (j.is_discarded()) throw FormatError(path.string() + ": not valid JSON");
  try {
    return fuzzy_set_from_json(j);
  } catch (const Error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace fuzzyset
