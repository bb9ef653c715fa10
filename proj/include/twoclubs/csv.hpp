#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace twoclubs::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line the record starts on
};

/// RFC 4180-style reader: comma separated, double-quoted fields may contain
/// commas, quotes ("") and newlines. Blank lines are skipped, a UTF-8 BOM and
/// trailing CR are stripped. Throws ParseError on an unterminated quote.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  std::optional<Row> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  bool first_ = true;
};

/// Quotes a field only when it needs it.
std::string escape(const std::string& field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Splits "a;b;c" style lists; an empty string yields an empty list.
std::vector<std::string> split(const std::string& text, char sep);
std::string join(const std::vector<std::string>& parts, char sep);

}  // namespace twoclubs::csv
