#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace wavemod {

using CsvCell = std::variant<std::string, double, long>;

// RFC 4180 quoting, LF line endings, doubles as %.17g
std::string csv_escape(const std::string& s);
std::string csv_format(const CsvCell& c);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  void add(std::vector<CsvCell> row);
  std::string str() const;
};

void write_csv(std::ostream& os, const CsvTable& t);
// writes the table to `path`; throws wavemod::Error on I/O failure
void emit_csv(const CsvTable& t, const std::string& path);

}  // namespace wavemod
