#include "gapcluster/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "gapcluster/errors.hpp"

namespace gapcluster {

namespace {

std::string_view trim(std::string_view cell) {
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
        cell.remove_suffix(1);
    return cell;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.emplace_back(trim(std::string_view(line).substr(start)));
            break;
        }
        cells.emplace_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || cell.empty())
        throw ParseError(line_no, col_no, "cell '" + cell + "' is not a number");
    if (!std::isfinite(value))
        throw ParseError(line_no, col_no, "cell '" + cell + "' is not finite");
    return value;
}

} // namespace

Dataset::Dataset(std::size_t rows, std::size_t cols, std::vector<double> values,
                 std::vector<std::string> row_labels, std::vector<std::string> feature_names)
    : rows_(rows), cols_(cols), values_(std::move(values)),
      row_labels_(std::move(row_labels)), feature_names_(std::move(feature_names)) {
    if (rows_ < 2 || cols_ < 1)
        throw EmptyDataset("dataset must have n >= 2 rows and p >= 1 columns, got "
                           + std::to_string(rows_) + "x" + std::to_string(cols_));
    if (values_.size() != rows_ * cols_)
        throw DimensionMismatch("value buffer size does not match " + std::to_string(rows_)
                                + "x" + std::to_string(cols_));
    for (double v : values_)
        if (!std::isfinite(v)) throw DimensionMismatch("dataset contains a non-finite value");
    if (!row_labels_.empty() && row_labels_.size() != rows_)
        throw DimensionMismatch("row label count does not match row count");
    if (!feature_names_.empty() && feature_names_.size() != cols_)
        throw DimensionMismatch("feature name count does not match column count");
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");

    std::vector<double> values;
    std::vector<std::string> row_labels;
    std::vector<std::string> feature_names;
    std::size_t cols = 0; // numeric columns
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool expect_header = options.has_header;
    std::size_t file_cols = 0;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);

        if (file_cols == 0) {
            file_cols = cells.size();
            if (options.label_column && *options.label_column >= file_cols)
                throw InputError("label column " + std::to_string(*options.label_column)
                                 + " out of range for " + std::to_string(file_cols) + " columns");
            cols = file_cols - (options.label_column ? 1 : 0);
        } else if (cells.size() != file_cols) {
            throw ParseError(line_no, std::min(cells.size(), file_cols) + 1,
                             "ragged row: expected " + std::to_string(file_cols)
                             + " cells, found " + std::to_string(cells.size()));
        }

        if (expect_header) {
            expect_header = false;
            for (std::size_t c = 0; c < cells.size(); ++c)
                if (!options.label_column || c != *options.label_column)
                    feature_names.push_back(cells[c]);
            continue;
        }

        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (options.label_column && c == *options.label_column) {
                row_labels.push_back(cells[c]);
                continue;
            }
            values.push_back(parse_cell(cells[c], line_no, c + 1));
        }
        ++rows;
    }

    if (rows < 2 || cols < 1)
        throw EmptyDataset("'" + path.string() + "' has " + std::to_string(rows)
                           + " data rows and " + std::to_string(cols) + " numeric columns");

    return Dataset(rows, cols, std::move(values),
                   options.label_column ? std::move(row_labels) : std::vector<std::string>{},
                   std::move(feature_names));
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");

    const bool labeled = !data.row_labels().empty();
    if (!data.feature_names().empty()) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            if (j) out << ',';
            out << data.feature_names()[j];
        }
        if (labeled) out << ",label";
        out << '\n';
    }

    char buf[64];
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            if (j) out << ',';
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, data.at(i, j));
            out.write(buf, ptr - buf);
        }
        if (labeled) out << ',' << data.row_labels()[i];
        out << '\n';
    }
}

FeatureRanges feature_ranges(const Dataset& data) {
    FeatureRanges ranges;
    ranges.mins.assign(data.cols(), 0.0);
    ranges.maxs.assign(data.cols(), 0.0);
    for (std::size_t j = 0; j < data.cols(); ++j) {
        double lo = data.at(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < data.rows(); ++i) {
            const double v = data.at(i, j);
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        ranges.mins[j] = lo;
        ranges.maxs[j] = hi;
    }
    return ranges;
}

} // namespace gapcluster
