#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "meander/series.hpp"

namespace meander::cli {

struct OeisFixture {
  std::string id;  // e.g. A082590
  int offset = 0;  // first index present
  std::map<int, Integer> values;
  std::string source;  // "fixtures" or "fetched"
  std::string notes;   // '#' comment lines of the file, joined
};

// b-file text: "index value" per line, '#' lines are comments. SyntaxError on
// anything else, RangeError when no values are present.
OeisFixture parse_bfile(std::string_view text, const std::string& id, const std::string& source);

bool valid_sequence_id(const std::string& id);

OeisFixture load_fixture(const std::filesystem::path& dir, const std::string& id);

// MEANDER_OEIS_CACHE, else $XDG_CACHE_HOME/meander/oeis, else ~/.cache/meander/oeis.
std::filesystem::path default_cache_dir();

// Returns the cached b-file if present, otherwise downloads it from oeis.org
// and stores the raw text in the cache. Never touches fixture files.
// NetworkError on any transport or HTTP failure.
OeisFixture fetch_sequence(const std::string& id, const std::filesystem::path& cache_dir);

}  // namespace meander::cli
