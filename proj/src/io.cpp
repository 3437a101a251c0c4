#include "credal/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace credal {

namespace {

std::string location(const std::string& path, std::size_t line) {
    return path + ":" + std::to_string(line);
}

std::vector<double> parse_row(const std::string& raw, const std::string& path,
                              std::size_t line_no) {
    std::vector<double> row;
    const char* p = raw.data();
    const char* end = raw.data() + raw.size();
    while (p != end) {
        if (*p == ' ' || *p == '\t' || *p == ',' || *p == '\r') {
            ++p;
            continue;
        }
        double value = 0.0;
        const auto res = std::from_chars(p, end, value);
        if (res.ec != std::errc{}) {
            const char* tok_end = p;
            while (tok_end != end && *tok_end != ' ' && *tok_end != '\t' && *tok_end != ',' &&
                   *tok_end != '\r')
                ++tok_end;
            throw ParseError(location(path, line_no) + ": expected a number, got '" +
                             std::string(p, tok_end) + "'");
        }
        if (!std::isfinite(value))
            throw ParseError(location(path, line_no) + ": non-finite value");
        row.push_back(value);
        p = res.ptr;
        if (p != end && *p != ' ' && *p != '\t' && *p != ',' && *p != '\r')
            throw ParseError(location(path, line_no) + ": malformed number near '" +
                             std::string(p, std::min(p + 8, end)) + "'");
    }
    return row;
}

}  // namespace

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path + ": cannot open file");

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<double> row = parse_row(line, path, line_no);
        if (row.empty())
            continue;
        if (cols == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw ParseError(location(path, line_no) + ": expected " + std::to_string(cols) +
                             " columns, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw ParseError(path + ": no data rows");

    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i].begin(), rows[i].end(), m.row(i));
    return m;
}

GroupedSample read_grouped_file(const std::string& path, std::size_t group_col) {
    const Matrix raw = read_matrix_file(path);
    if (group_col >= raw.cols())
        throw ParseError(path + ": group column " + std::to_string(group_col) +
                         " out of range for " + std::to_string(raw.cols()) + " columns");
    if (raw.cols() < 2)
        throw ParseError(path + ": a grouped file needs at least two columns");

    std::map<long long, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < raw.rows(); ++i) {
        const double g = raw(i, group_col);
        const auto label = static_cast<long long>(std::llround(g));
        if (std::abs(g - static_cast<double>(label)) > 1e-9)
            throw ParseError(path + ": row " + std::to_string(i + 1) +
                             " has a non-integer group value");
        groups[label].push_back(i);
    }

    std::vector<Dataset> extremes;
    std::vector<long long> labels;
    std::vector<std::size_t> sizes;
    for (const auto& [label, rows] : groups) {
        Matrix m(rows.size(), raw.cols() - 1);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::size_t at = 0;
            for (std::size_t c = 0; c < raw.cols(); ++c)
                if (c != group_col)
                    m(i, at++) = raw(rows[i], c);
        }
        extremes.emplace_back(std::move(m));
        labels.push_back(label);
        sizes.push_back(rows.size());
    }
    return {CredalSample(std::move(extremes)), std::move(labels), std::move(sizes)};
}

CredalSample read_credal_files(const std::vector<std::string>& paths) {
    if (paths.empty())
        throw InvalidInputError("at least one data file is required");
    std::vector<Dataset> extremes;
    extremes.reserve(paths.size());
    for (const auto& p : paths)
        extremes.emplace_back(read_matrix_file(p));
    return CredalSample(std::move(extremes));
}

void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out)
        throw Error(path + ": cannot open file for writing");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                out << ' ';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

}  // namespace credal
