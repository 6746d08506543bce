#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hoverplan::io {

// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

// CSV with a provenance comment line ("# config_hash=<hex> seed=<n>") and a
// header row. Cells are written verbatim; callers avoid commas in text.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& config_hash, std::uint64_t seed,
            const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace hoverplan::io
