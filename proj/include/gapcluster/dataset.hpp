#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gapcluster {

/// An n x p matrix of finite reals with optional row labels and feature
/// names. n >= 2, p >= 1; construction validates both. Immutable after
/// construction and safe to share across threads.
class Dataset {
public:
    Dataset(std::size_t rows, std::size_t cols, std::vector<double> values,
            std::vector<std::string> row_labels = {},
            std::vector<std::string> feature_names = {});

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }

    const std::vector<double>& values() const { return values_; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_; // row-major
    std::vector<std::string> row_labels_;
    std::vector<std::string> feature_names_;
};

struct CsvOptions {
    bool has_header = false;
    std::optional<std::size_t> label_column; // 0-based; excluded from values
};

/// Loads a comma-separated numeric file ('.' decimal point, optional single
/// header line). Every non-label cell must parse as a finite real; failures
/// raise ParseError with the 1-based file line and cell index.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes a dataset back to CSV with shortest round-trip formatting, so that
/// load_csv(write_csv(d)) reproduces values bit-exactly. Row labels, when
/// present, are appended as a final column.
void write_csv(const Dataset& data, const std::filesystem::path& path);

/// Per-feature observed bounds; the support of the uniform null-reference box.
struct FeatureRanges {
    std::vector<double> mins;
    std::vector<double> maxs;
};

FeatureRanges feature_ranges(const Dataset& data);

} // namespace gapcluster
