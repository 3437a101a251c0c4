#pragma once

#include <string>
#include <vector>

#include "credal/types.hpp"

namespace credal {

/// Reads a comma- or whitespace-delimited numeric matrix from a UTF-8 text
/// file. Blank lines and lines starting with '#' are skipped. Parse errors
/// name the file and 1-based line.
Matrix read_matrix_file(const std::string& path);

struct GroupedSample {
    CredalSample sample;
    std::vector<long long> group_labels;  // ascending
    std::vector<std::size_t> group_sizes;
};

/// Splits the rows of a matrix file into one dataset per distinct integer
/// value of the given 0-based column; that column is dropped from the data.
GroupedSample read_grouped_file(const std::string& path, std::size_t group_col);

/// One dataset per file.
CredalSample read_credal_files(const std::vector<std::string>& paths);

void write_matrix_file(const std::string& path, const Matrix& m);

}  // namespace credal
