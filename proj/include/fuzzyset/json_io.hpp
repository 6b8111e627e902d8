#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fuzzyset/fuzzy_set.hpp"
#include "fuzzyset/seq_codec.hpp"

namespace fuzzyset {

using Json = nlohmann::ordered_json;

/// {"atoms":[...],"elements":[{"expr":"<text>","mu":<number>},...]}
Json to_json(const FuzzySet& set);
FuzzySet fuzzy_set_from_json(const Json& j);

/// {"m_star":-2,"bits":[1,0,1,0,1],"truncated":false}; bits[i] is a_{m_star+i}.
/// Extra keys are ignored on input.
Json to_json(const BinarySequence& a);
BinarySequence sequence_from_json(const Json& j);

/// Serializes with every floating-point number written to 17 significant digits.
/// indent < 0 gives a single line.
std::string dump_json(const Json& j, int indent = 2);

/// Reads and validates a fuzzy set file. Throws FormatError on I/O or schema problems.
FuzzySet load_fuzzy_set(const std::filesystem::path& path);

/// Formats a double with 17 significant digits (%.17g).
std::string format_number(double v);

}  // namespace fuzzyset
