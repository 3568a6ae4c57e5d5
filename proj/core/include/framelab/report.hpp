#pragma once

#include <string>
#include <vector>

namespace framelab {

// Fixed numeric formatting for reproducible reports: 17 significant digits
// round-trip any double exactly.
std::string format_sig17(double v);

// Minimal CSV builder: header row + string cells, '\n' line endings.
struct csv_table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
  std::string str() const;
};

}  // namespace framelab
