#pragma once

#include <istream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace regsel {

/// Marker for a missing cell ("", NA, NaN, ?).
struct Missing {
  friend bool operator==(Missing, Missing) = default;
};

using Cell = std::variant<Missing, double, std::string>;

/// Tabular input exactly as read, before any cleaning.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<Cell>> rows;

  [[nodiscard]] std::size_t num_rows() const noexcept { return rows.size(); }
  [[nodiscard]] std::size_t num_columns() const noexcept { return column_names.size(); }
};

struct TableFormat {
  char delimiter = ',';
};

/// Reads delimiter-separated text with a header row. Double-quoted fields
/// are supported (no embedded line breaks). Throws ParseError on a row
/// with the wrong number of cells or on an empty table.
[[nodiscard]] RawTable load_table(std::istream& source, const TableFormat& format = {});

[[nodiscard]] bool is_missing_token(std::string_view token);

enum class LogShiftPolicy {
  /// log(a) when every value is positive, else log(a + |min a| + 1).
  kShiftNonPositive,
  /// Always log(a + |min a| + 1).
  kAlwaysShift,
};

struct PreprocessOptions {
  std::string response;
  LogShiftPolicy log_shift = LogShiftPolicy::kShiftNonPositive;
};

/// Standardized design with paired log columns. Columns [0, m) are the
/// original explanatory variables, [m, 2m) their log transforms; column j
/// pairs with j + m. Every column and the response have sample mean 0 and
/// sample standard deviation 1. Immutable once built.
class Dataset {
 public:
  Dataset(Eigen::MatrixXd design, Eigen::VectorXd response, Eigen::VectorXd column_means,
          Eigen::VectorXd column_stds, std::vector<std::string> names);

  [[nodiscard]] int n() const noexcept { return static_cast<int>(design_.rows()); }
  [[nodiscard]] int m() const noexcept { return static_cast<int>(design_.cols() / 2); }
  [[nodiscard]] int num_columns() const noexcept { return static_cast<int>(design_.cols()); }
  [[nodiscard]] int pair(int column) const noexcept {
    return column < m() ? column + m() : column - m();
  }

  [[nodiscard]] const Eigen::MatrixXd& design() const noexcept { return design_; }
  [[nodiscard]] const Eigen::VectorXd& response() const noexcept { return response_; }
  /// Length 2m + 1; the last entry belongs to the response.
  [[nodiscard]] const Eigen::VectorXd& column_means() const noexcept { return means_; }
  [[nodiscard]] const Eigen::VectorXd& column_stds() const noexcept { return stds_; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] const std::string& response_name() const { return names_.back(); }

 private:
  Eigen::MatrixXd design_;
  Eigen::VectorXd response_;
  Eigen::VectorXd means_;
  Eigen::VectorXd stds_;
  std::vector<std::string> names_;
};

/// Log-augments and standardizes a numeric explanatory matrix (n x m) and
/// response. Throws DataError on zero-variance columns or n < 3.
[[nodiscard]] Dataset build_dataset(const Eigen::MatrixXd& explanatory, const Eigen::VectorXd& response,
                                    std::vector<std::string> column_names, std::string response_name,
                                    LogShiftPolicy policy = LogShiftPolicy::kShiftNonPositive);

/// Drops incomplete rows, one-hot encodes categorical columns (first level
/// in sorted order dropped), then calls build_dataset.
[[nodiscard]] Dataset preprocess(const RawTable& raw, const PreprocessOptions& options);

/// Elementwise log transform with the shift rule applied to one column.
[[nodiscard]] Eigen::VectorXd log_transform(const Eigen::VectorXd& column,
                                            LogShiftPolicy policy = LogShiftPolicy::kShiftNonPositive);

}  // namespace regsel
