#include "hoverplan/io/csv.hpp"

#include <charconv>
#include <cmath>

#include "hoverplan/types.hpp"

namespace hoverplan::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& config_hash, std::uint64_t seed,
                     const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  out_ << "# config_hash=" << config_hash << " seed=" << seed << '\n';
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  require(cells.size() == columns_, "csv: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

}  // namespace hoverplan::io
