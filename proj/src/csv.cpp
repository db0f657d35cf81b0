#include "signed_louvain/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace signed_louvain::csv {

namespace {

bool needs_quotes(const std::string& field) { return field.find_first_of(",\"\n\r") != std::string::npos; }

void write_field(std::ostream& out, const std::string& field) {
  if (!needs_quotes(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char ch : field) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace

Table parse(std::istream& in) {
  Table table;
  std::string line;
  bool in_body = false;
  while (in.peek() != std::char_traits<char>::eof()) {
    if (!in_body && in.peek() == '#') {
      std::getline(in, line);
      table.comments.push_back(line.substr(1));
      continue;
    }
    in_body = true;

    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool done = false;
    while (!done) {
      const int next = in.get();
      if (next == std::char_traits<char>::eof()) {
        if (quoted) throw std::runtime_error("unterminated quoted field");
        done = true;
        break;
      }
      const char ch = static_cast<char>(next);
      if (quoted) {
        if (ch == '"') {
          if (in.peek() == '"') {
            field += static_cast<char>(in.get());
          } else {
            quoted = false;
          }
        } else {
          field += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        row.push_back(std::move(field));
        field.clear();
      } else if (ch == '\n') {
        done = true;
      } else {
        field += ch;
      }
    }
    row.push_back(std::move(field));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write(std::ostream& out, const Table& table) {
  for (const auto& c : table.comments) out << '#' << c << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      write_field(out, row[i]);
    }
    out << '\n';
  }
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

int schema_version(const Table& table) {
  constexpr std::string_view key = " schema=";
  for (const auto& c : table.comments) {
    if (c.rfind(key, 0) == 0) {
      int v = -1;
      const auto digits = std::string_view(c).substr(key.size());
      std::from_chars(digits.data(), digits.data() + digits.size(), v);
      return v;
    }
  }
  return -1;
}

}  // namespace signed_louvain::csv
