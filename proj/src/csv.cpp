#include "wavemod/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wavemod/error.hpp"

namespace wavemod {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_format(const CsvCell& c) {
  if (auto* s = std::get_if<std::string>(&c)) return csv_escape(*s);
  if (auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c));
  return buf;
}

void CsvTable::add(std::vector<CsvCell> row) {
  if (!header.empty() && row.size() != header.size())
    throw std::invalid_argument("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const CsvTable& t) {
  auto line = [&os](const auto& cells, auto&& f) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << f(cells[i]);
    os << '\n';
  };
  if (!t.header.empty()) line(t.header, [](const std::string& s) { return csv_escape(s); });
  for (const auto& r : t.rows) line(r, [](const CsvCell& c) { return csv_format(c); });
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write_csv(os, *this);
  return os.str();
}

void emit_csv(const CsvTable& t, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  write_csv(f, t);
  if (!f) throw Error("write failed for '" + path + "'");
}

}  // namespace wavemod
