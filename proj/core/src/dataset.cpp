#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "nsfts/dataset.hpp"
#include "nsfts/errors.hpp"

namespace nsfts {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool blank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

}  // namespace

std::vector<double> read_csv_column(const std::filesystem::path& path, const ColumnSelector& column,
                                    bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file '" + path.string() + "'");

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  // A single trailing newline produces no extra row; anything else blank is an error.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  std::size_t first_data = 0;
  std::size_t col = 0;
  if (has_header) {
    if (lines.empty()) throw DataError("CSV file '" + path.string() + "' has no header row");
    const auto header = split(lines[0]);
    if (const auto* name = std::get_if<std::string>(&column)) {
      bool found = false;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == *name) {
          col = i;
          found = true;
          break;
        }
      }
      if (!found) throw DataError("CSV file '" + path.string() + "' has no column named '" + *name + "'");
    } else {
      col = std::get<std::size_t>(column);
      if (col >= header.size()) {
        throw DataError("CSV file '" + path.string() + "' has no column " + std::to_string(col));
      }
    }
    first_data = 1;
  } else if (const auto* name = std::get_if<std::string>(&column)) {
    throw DataError("column '" + *name + "' selected by name but the CSV has no header");
  } else {
    col = std::get<std::size_t>(column);
  }

  std::vector<double> values;
  for (std::size_t i = first_data; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    if (blank(lines[i])) throw DataError(path.string() + ": row " + std::to_string(row) + " is blank");
    const auto cells = split(lines[i]);
    if (col >= cells.size()) {
      throw DataError(path.string() + ": row " + std::to_string(row) + " has no column " +
                      std::to_string(col));
    }
    const std::string_view cell = cells[col];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
      throw DataError(path.string() + ": row " + std::to_string(row) + " has non-numeric value '" +
                      std::string(cell) + "'");
    }
    values.push_back(value);
  }
  return values;
}

Dataset load_csv(const std::filesystem::path& path, const ColumnSelector& column, bool has_header) {
  Dataset out;
  out.name = path.stem().string();
  out.provenance = "file:" + path.string();
  out.values = read_csv_column(path, column, has_header);
  if (out.values.empty()) throw DataError("CSV file '" + path.string() + "' contains no data rows");
  return out;
}

}  // namespace nsfts
