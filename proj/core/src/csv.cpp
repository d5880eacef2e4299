#include "netcas/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "netcas/error.hpp"

namespace netcas {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Shortest decimal string that round-trips back to the same double, so
  // CSV outputs are byte-stable across runs with the same seed.
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path, const std::vector<std::string>& header)
    : path_(std::move(path)), tmp_(path_), columns_(header.size()) {
  tmp_ += ".tmp";
  if (columns_ == 0) throw ConfigError("CSV header must have at least one column");
  row(header);
}

CsvWriter::~CsvWriter() {
  if (!committed_) {
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (committed_) throw StateError("CsvWriter already committed");
  if (cells.size() != columns_) {
    throw StateError("CSV row width mismatch for " + path_.string());
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += cells[i];
  }
  buf_ += '\n';
}

void CsvWriter::commit() {
  if (committed_) return;
  if (!path_.parent_path().empty()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  {
    std::ofstream out(tmp_, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp_.string() + " for writing");
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp_.string());
  }
  std::filesystem::rename(tmp_, path_);
  committed_ = true;
}

std::size_t CsvTable::col(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ParseError("missing CSV column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != table.header.size()) {
        throw ParseError("ragged CSV row in " + path.string());
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw ParseError("empty CSV " + path.string());
  return table;
}

double csv_double(const std::string& cell) {
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') {
    throw ParseError("not a number: '" + cell + "'");
  }
  return v;
}

}  // namespace netcas
