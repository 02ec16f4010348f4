#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "errors.hpp"

namespace commsched {

// Emission always goes through ordered_json so key order is under our
// control and serialized artifacts are byte-stable.
using Json = nlohmann::ordered_json;

// Parse with a line/column position in the error message instead of
// nlohmann's byte offset.
inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    if (offset > text.size()) offset = text.size();
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError(std::string(what) + ": parse error at line " +
                          std::to_string(line) + ", column " +
                          std::to_string(column));
  }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace commsched
