#pragma once

// Minimal RFC-4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "sparsesel/core.hpp"

namespace sparsesel::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Throws ParseError on an unterminated quote, a missing header or a ragged row.
Table parse(std::istream& in);
Table read_file(const std::string& path);

/// Parses the whole field as a double; throws ParseError otherwise.
double to_double(std::string_view field);

struct RegressionData {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    std::vector<std::string> predictor_names;
    std::string response_name;
};

/// Splits a table into the named response column and the remaining
/// predictors. Throws MissingColumn naming the column if it is absent.
RegressionData to_regression(const Table& table, const std::string& response_column);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

} // namespace sparsesel::csv
