#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace signed_louvain::csv {

/// Version tag written as `# schema=N` at the top of every emitted table.
inline constexpr int kSchemaVersion = 1;

/// Leading `#` comment lines, then rows (the first row is the header).
struct Table {
  std::vector<std::string> comments;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 style: fields holding a comma, quote or newline are quoted.
Table parse(std::istream& in);
void write(std::ostream& out, const Table& table);

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);

/// Reads the `schema=N` tag from the comments; -1 when absent.
int schema_version(const Table& table);

}  // namespace signed_louvain::csv
