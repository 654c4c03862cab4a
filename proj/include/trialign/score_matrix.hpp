#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "trialign/errors.hpp"

namespace trialign {

// Dense |V_A| x |V_B| matrix of alignment scores. Rows index nodes of the
// first graph, columns nodes of the second. Storage is column-major so that
// vec() is exactly the linearization ii' = i' * rows + i used by the tensor
// iteration; vec and unvec are therefore views, not copies.
class score_matrix {
  public:
    score_matrix() : rows_(0), cols_(0) {}

    score_matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw validation_error("score_matrix: negative dimension");
        data_.assign(static_cast<std::size_t>(rows) * cols, fill);
    }

    static score_matrix unvec(std::vector<double> v, int rows, int cols) {
        if (v.size() != static_cast<std::size_t>(rows) * cols)
            throw validation_error("unvec: length does not match dimensions");
        score_matrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_ = std::move(v);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(j) * rows_ + i];
    }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(j) * rows_ + i];
    }

    const std::vector<double>& vec() const { return data_; }
    std::vector<double>& vec() { return data_; }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    std::vector<double> row_sums() const {
        std::vector<double> r(rows_, 0.0);
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i) r[i] += (*this)(i, j);
        return r;
    }

    std::vector<double> col_sums() const {
        std::vector<double> c(cols_, 0.0);
        for (int j = 0; j < cols_; ++j)
            for (int i = 0; i < rows_; ++i) c[j] += (*this)(i, j);
        return c;
    }

  private:
    int rows_, cols_;
    std::vector<double> data_;
};

}  // namespace trialign
