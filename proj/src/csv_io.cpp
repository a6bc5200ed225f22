#include "metric_sdr/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "metric_sdr/errors.hpp"

namespace metric_sdr::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Table read(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  Table table;
  bool header_pending = has_header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body);
    if (header_pending) {
      for (auto f : fields) table.header.emplace_back(f);
      header_pending = false;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto f = fields[c];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size())
        throw InvalidInput(path + ":" + std::to_string(line_no) + ": field " +
                           std::to_string(c + 1) + " is not a number ('" + std::string(f) + "')");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line_no);
  }
  return table;
}

std::string format(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw NumericError("cannot format value");
  return {buf, ptr};
}

void write_row(std::ostream& out, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (j) out << ',';
    out << format(row(j));
  }
  out << '\n';
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) write_row(out, m.row(i));
}

Eigen::MatrixXd to_matrix(const Table& table, const std::string& what) {
  if (table.rows.empty()) throw InvalidInput(what + ": no data rows");
  const std::size_t width = table.rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(table.rows.size()),
                    static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != width)
      throw InvalidInput(what + ": row " + std::to_string(i + 1) + " (line " +
                         std::to_string(table.line_numbers[i]) + ") has " +
                         std::to_string(table.rows[i].size()) + " values, expected " +
                         std::to_string(width));
    for (std::size_t j = 0; j < width; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = table.rows[i][j];
  }
  return m;
}

}  // namespace metric_sdr::csv
