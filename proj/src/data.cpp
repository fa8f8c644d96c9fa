#include "regsel/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "regsel/error.hpp"

namespace regsel {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_record(const std::string& line, char delimiter, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
      was_quoted = true;
    } else if (c == delimiter) {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (in_quotes) {
    throw ParseError("unterminated quoted field on line " + std::to_string(line_no));
  }
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

Cell parse_cell(const std::string& token) {
  if (is_missing_token(token)) return Missing{};
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc() && ptr == last && std::isfinite(value)) return value;
  return token;
}

double sample_std(const Eigen::VectorXd& v, double mean) {
  const double ss = (v.array() - mean).square().sum();
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

bool is_missing_token(std::string_view token) {
  token = trim(token);
  if (token.empty() || token == "?") return true;
  auto iequals = [&](std::string_view word) {
    return token.size() == word.size() &&
           std::equal(token.begin(), token.end(), word.begin(), [](char a, char b) {
             return std::tolower(static_cast<unsigned char>(a)) == b;
           });
  };
  return iequals("na") || iequals("nan");
}

RawTable load_table(std::istream& source, const TableFormat& format) {
  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
      if (trim(line).empty()) continue;
      table.column_names = split_record(line, format.delimiter, line_no);
      have_header = true;
      continue;
    }
    if (trim(line).empty()) continue;
    auto fields = split_record(line, format.delimiter, line_no);
    if (fields.size() != table.column_names.size()) {
      throw ParseError("data row " + std::to_string(table.rows.size() + 1) + " (line " +
                       std::to_string(line_no) + ") has " + std::to_string(fields.size()) +
                       " cells, expected " + std::to_string(table.column_names.size()));
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("empty table: no header row");
  if (table.rows.empty()) throw ParseError("empty table: header without data rows");
  return table;
}

Eigen::VectorXd log_transform(const Eigen::VectorXd& column, LogShiftPolicy policy) {
  const double min_value = column.minCoeff();
  const bool shift = policy == LogShiftPolicy::kAlwaysShift || min_value <= 0.0;
  const double offset = shift ? std::abs(min_value) + 1.0 : 0.0;
  return (column.array() + offset).log().matrix();
}

Dataset::Dataset(Eigen::MatrixXd design, Eigen::VectorXd response, Eigen::VectorXd column_means,
                 Eigen::VectorXd column_stds, std::vector<std::string> names)
    : design_(std::move(design)),
      response_(std::move(response)),
      means_(std::move(column_means)),
      stds_(std::move(column_stds)),
      names_(std::move(names)) {
  if (design_.cols() % 2 != 0) throw DataError("design must have an even number of columns");
  if (design_.rows() != response_.size()) throw DataError("design and response row counts differ");
  if (means_.size() != design_.cols() + 1 || stds_.size() != design_.cols() + 1 ||
      static_cast<Eigen::Index>(names_.size()) != design_.cols() + 1) {
    throw DataError("column metadata must have 2m + 1 entries");
  }
}

Dataset build_dataset(const Eigen::MatrixXd& explanatory, const Eigen::VectorXd& response,
                      std::vector<std::string> column_names, std::string response_name,
                      LogShiftPolicy policy) {
  const Eigen::Index n = explanatory.rows();
  const Eigen::Index m = explanatory.cols();
  if (response.size() != n) throw DataError("response length does not match row count");
  if (n < 3) throw DataError("need at least 3 complete observations, got " + std::to_string(n));
  if (m < 1) throw DataError("no explanatory columns");
  if (static_cast<Eigen::Index>(column_names.size()) != m) {
    throw DataError("column name count does not match explanatory columns");
  }

  Eigen::MatrixXd raw(n, 2 * m);
  raw.leftCols(m) = explanatory;
  for (Eigen::Index j = 0; j < m; ++j) raw.col(m + j) = log_transform(explanatory.col(j), policy);

  std::vector<std::string> names = column_names;
  for (Eigen::Index j = 0; j < m; ++j) names.push_back("log(" + column_names[j] + ")");
  names.push_back(response_name);

  Eigen::VectorXd means(2 * m + 1);
  Eigen::VectorXd stds(2 * m + 1);
  Eigen::MatrixXd design(n, 2 * m);
  for (Eigen::Index j = 0; j < 2 * m; ++j) {
    const double mean = raw.col(j).mean();
    const double sd = sample_std(raw.col(j), mean);
    if (!(sd > 0.0) || !std::isfinite(sd)) {
      throw DataError("column '" + names[j] + "' has zero variance after cleaning");
    }
    means(j) = mean;
    stds(j) = sd;
    design.col(j) = (raw.col(j).array() - mean) / sd;
  }
  const double ymean = response.mean();
  const double ysd = sample_std(response, ymean);
  if (!(ysd > 0.0)) throw DataError("response '" + response_name + "' has zero variance");
  means(2 * m) = ymean;
  stds(2 * m) = ysd;
  Eigen::VectorXd b = (response.array() - ymean) / ysd;

  return Dataset(std::move(design), std::move(b), std::move(means), std::move(stds), std::move(names));
}

Dataset preprocess(const RawTable& raw, const PreprocessOptions& options) {
  const auto& cols = raw.column_names;
  auto it = std::find(cols.begin(), cols.end(), options.response);
  if (it == cols.end()) throw DataError("response column '" + options.response + "' not found");
  const std::size_t response_col = static_cast<std::size_t>(it - cols.begin());

  std::vector<const std::vector<Cell>*> complete;
  for (const auto& row : raw.rows) {
    const bool has_missing =
        std::any_of(row.begin(), row.end(), [](const Cell& c) { return std::holds_alternative<Missing>(c); });
    if (!has_missing) complete.push_back(&row);
  }
  const auto n = static_cast<Eigen::Index>(complete.size());
  if (n < 3) throw DataError("fewer than 3 complete rows after removing missing values");

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Cell& c = (*complete[i])[response_col];
    if (!std::holds_alternative<double>(c)) {
      throw DataError("response column '" + options.response + "' is not numeric");
    }
    y(i) = std::get<double>(c);
  }

  std::vector<Eigen::VectorXd> columns;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (j == response_col) continue;
    const bool numeric = std::all_of(complete.begin(), complete.end(),
                                     [&](const auto* row) { return std::holds_alternative<double>((*row)[j]); });
    if (numeric) {
      Eigen::VectorXd v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = std::get<double>((*complete[i])[j]);
      columns.push_back(std::move(v));
      names.push_back(cols[j]);
      continue;
    }
    // Mixed numbers and labels are treated as labels.
    auto label_of = [&](const Cell& c) {
      if (const auto* s = std::get_if<std::string>(&c)) return *s;
      std::ostringstream out;
      out.precision(17);
      out << std::get<double>(c);
      return out.str();
    };
    std::set<std::string> levels;
    for (const auto* row : complete) levels.insert(label_of((*row)[j]));
    if (levels.size() < 2) throw DataError("column '" + cols[j] + "' has zero variance after cleaning");
    for (auto lvl = std::next(levels.begin()); lvl != levels.end(); ++lvl) {
      Eigen::VectorXd v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = label_of((*complete[i])[j]) == *lvl ? 1.0 : 0.0;
      columns.push_back(std::move(v));
      names.push_back(cols[j] + "=" + *lvl);
    }
  }
  if (columns.empty()) throw DataError("no explanatory columns besides the response");

  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) x.col(static_cast<Eigen::Index>(j)) = columns[j];
  return build_dataset(x, y, std::move(names), options.response, options.log_shift);
}

}  // namespace regsel
