#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace metric_sdr::csv {

struct Table {
  std::vector<std::string> header;         // empty when read without a header
  std::vector<std::vector<double>> rows;   // may be ragged; callers validate
  std::vector<std::size_t> line_numbers;   // 1-based source line of each row
};

// Comma-separated numbers, '#' comment lines and blank lines skipped.
// Throws InvalidInput naming the file and line of the first bad field.
Table read(const std::string& path, bool has_header);

// Shortest decimal representation that round-trips to the same double.
std::string format(double value);

void write_row(std::ostream& out, const Eigen::Ref<const Eigen::RowVectorXd>& row);
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);

// Requires a rectangular table; throws InvalidInput naming the ragged row.
Eigen::MatrixXd to_matrix(const Table& table, const std::string& what);

}  // namespace metric_sdr::csv
