#pragma once

#include <wcoj/relational.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wcoj::cli {

/** Comma-separated values, first line a header, fields taken verbatim.
 * Double-quoted fields may contain commas, quotes ("") and newlines.  Blank
 * lines are skipped and a trailing '\r' is dropped. */
RawTable parse_csv(std::string_view text, std::string name);
RawTable read_csv(const std::filesystem::path &path, std::string name);

/// Writes one record, quoting fields that need it.
void write_csv_row(std::ostream &os, const std::vector<std::string> &fields);

}
