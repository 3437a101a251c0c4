#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace credal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

struct InsufficientSamplesError : Error {
    using Error::Error;
};

struct DegenerateDataError : Error {
    using Error::Error;
};

struct InvalidSplitError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }
    std::span<const double> row_span(std::size_t i) const { return {row(i), cols_}; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// An n-by-d sample matrix: rows are observations, columns coordinates.
/// Entries must be finite, n >= 1 and d >= 1.
class Dataset {
public:
    explicit Dataset(Matrix values) : values_(std::move(values)) {
        if (values_.rows() == 0 || values_.cols() == 0)
            throw InvalidInputError("dataset must have at least one row and one column");
        const double* p = values_.data();
        const std::size_t total = values_.rows() * values_.cols();
        for (std::size_t i = 0; i < total; ++i)
            if (!std::isfinite(p[i]))
                throw InvalidInputError("dataset contains a non-finite entry");
    }

    const Matrix& values() const { return values_; }
    std::size_t size() const { return values_.rows(); }
    std::size_t dim() const { return values_.cols(); }
    std::span<const double> row(std::size_t i) const { return values_.row_span(i); }

    Dataset take_rows(std::span<const std::size_t> indices) const {
        if (indices.empty())
            throw InvalidInputError("cannot build a dataset from zero rows");
        Matrix m(indices.size(), dim());
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const double* src = values_.row(indices[i]);
            std::copy(src, src + dim(), m.row(i));
        }
        return Dataset(std::move(m));
    }

private:
    Matrix values_;
};

/// Ordered collection of per-extreme-point datasets sharing one dimension.
class CredalSample {
public:
    explicit CredalSample(std::vector<Dataset> extremes) : extremes_(std::move(extremes)) {
        if (extremes_.empty())
            throw InvalidInputError("credal sample needs at least one extreme point");
        const std::size_t d = extremes_.front().dim();
        for (const auto& e : extremes_)
            if (e.dim() != d)
                throw InvalidInputError("all extreme-point datasets must share one dimension");
    }

    std::size_t count() const { return extremes_.size(); }
    std::size_t dim() const { return extremes_.front().dim(); }
    const Dataset& extreme(std::size_t i) const { return extremes_.at(i); }
    const std::vector<Dataset>& extremes() const { return extremes_; }

    std::size_t min_size() const {
        std::size_t m = extremes_.front().size();
        for (const auto& e : extremes_)
            m = std::min(m, e.size());
        return m;
    }

private:
    std::vector<Dataset> extremes_;
};

/// Convex mixture weights on the probability simplex.
/// Construction clamps negatives down to -1e-12 and renormalises a sum
/// within 1e-9 of one; anything further off is rejected.
class Weights {
public:
    explicit Weights(std::vector<double> w) : w_(std::move(w)) {
        if (w_.empty())
            throw InvalidInputError("weight vector must be nonempty");
        double sum = 0.0;
        for (double& v : w_) {
            if (!std::isfinite(v))
                throw InvalidInputError("weight vector contains a non-finite entry");
            if (v < 0.0) {
                if (v < -1e-12)
                    throw InvalidInputError("weight vector has a negative entry");
                v = 0.0;
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw InvalidInputError("weight vector does not sum to one");
        for (double& v : w_)
            v /= sum;
    }

    static Weights uniform(std::size_t m) {
        if (m == 0)
            throw InvalidInputError("weight vector must be nonempty");
        return Weights(std::vector<double>(m, 1.0 / static_cast<double>(m)));
    }

    static Weights unit(std::size_t m, std::size_t index) {
        if (index >= m)
            throw InvalidInputError("unit weight index out of range");
        std::vector<double> w(m, 0.0);
        w[index] = 1.0;
        return Weights(std::move(w));
    }

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    std::span<const double> values() const { return w_; }

private:
    std::vector<double> w_;
};

/// Shortest round-trip decimal representation (deterministic, locale-free).
std::string format_double(double v);

}  // namespace credal
