#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace netcas {

// Shortest exact text form for a double; round-trips and is deterministic.
std::string fmt_double(double v);

// CSV writer with atomic publish: rows go to "<path>.tmp", commit() renames
// into place. An uncommitted writer removes its temp file on destruction.
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);
  void commit();

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::string buf_;
  std::size_t columns_;
  bool committed_ = false;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws ParseError when missing.
  std::size_t col(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
double csv_double(const std::string& cell);

}  // namespace netcas
