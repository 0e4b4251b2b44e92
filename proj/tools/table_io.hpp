#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "meander/enumerate.hpp"
#include "meander/series.hpp"
#include "meander/structure.hpp"
#include "meander/verify.hpp"

namespace meander::cli {

using nlohmann::json;

// CSV: header n,k,count. JSON: {"kind", "max_total", "entries": [{"n","k","count"}]}
// with counts as decimal strings.
std::string to_csv(const CountTable& table);
json to_json(const CountTable& table, Kind kind);
// CSV: header n,k,total,irreducible,snake,iterated_snake.
std::string to_csv(const ClassifiedCensus& census);
json to_json(const ClassifiedCensus& census);

// Inverse of the exporters. The table order is the largest n+k present and
// every entry of the triangle must be listed (IncompleteTable otherwise).
CountTable count_table_from_csv(std::string_view text);
CountTable count_table_from_json(const json& doc);
ClassifiedCensus classified_from_csv(std::string_view text);
ClassifiedCensus classified_from_json(const json& doc);

json to_json(const VerificationReport& report);
json to_json(const Diagnostic& d);
json to_json(const PowerSeries& s);

}  // namespace meander::cli
