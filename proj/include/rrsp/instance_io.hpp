#pragma once

#include <string>
#include <string_view>

#include "rrsp/graph.hpp"
#include "rrsp/model.hpp"

namespace rrsp {

inline constexpr std::string_view kInstanceFormat = "rrsp-instance";
inline constexpr int kInstanceVersion = 1;

/// JSON document, two-space indent, fixed key order. Node names are written
/// when they are unique, otherwise node indices are used as names.
std::string serialize_instance(const Instance& inst);

/// Throws Error(Parse) for malformed JSON, wrong types, missing or unknown
/// keys (the message carries a JSON pointer such as /arcs/3/colour), and
/// Error(Validation) when the decoded instance fails validate_instance.
Instance parse_instance(std::string_view text);

/// Error(Io) when the file cannot be read or written.
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

/// Accepts arc ids ("0,2" or "[0,2]") or node labels joined by '>'
/// ("s>a>t"; among parallel arcs the smallest id is taken). Throws
/// Error(Parse) for unknown labels or missing arcs.
Path parse_path_spec(const Multidigraph& g, std::string_view text);

}  // namespace rrsp
