#include "pamed/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "pamed/errors.hpp"

namespace pamed {

SparseOperator::SparseOperator(std::uint64_t dim, std::vector<std::uint64_t> row_ptr,
                               std::vector<std::uint64_t> cols, std::vector<double> vals)
    : dim_(dim), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), vals_(std::move(vals)) {
    if (row_ptr_.size() != dim_ + 1 || cols_.size() != vals_.size())
        throw DimensionMismatch("inconsistent CSR arrays");
}

void SparseOperator::matvec(const double* x, double* y) const {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim_); ++i) {
        double sum = 0.0;
        for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            sum += vals_[k] * x[cols_[k]];
        y[i] = sum;
    }
}

StateVector SparseOperator::matvec(const StateVector& x) const {
    if (x.amps.size() != dim_) throw DimensionMismatch("matvec: state dimension differs");
    StateVector y;
    y.basis = x.basis;
    y.amps.resize(dim_);
    matvec(x.amps.data(), y.amps.data());
    return y;
}

bool SparseOperator::is_symmetric() const {
    for (std::uint64_t i = 0; i < dim_; ++i) {
        for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            const std::uint64_t j = cols_[k];
            const auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[j]);
            const auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[j + 1]);
            auto it = std::lower_bound(begin, end, i);
            if (it == end || *it != i) return false;
            if (vals_[static_cast<std::size_t>(it - cols_.begin())] != vals_[k]) return false;
        }
    }
    return true;
}

void SparseOperator::write_coo(std::ostream& out) const {
    char buf[64];
    for (std::uint64_t i = 0; i < dim_; ++i) {
        for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", vals_[k]);
            out << i << ' ' << cols_[k] << ' ' << buf << '\n';
        }
    }
}

std::vector<std::vector<double>> SparseOperator::to_dense() const {
    std::vector<std::vector<double>> m(dim_, std::vector<double>(dim_, 0.0));
    for (std::uint64_t i = 0; i < dim_; ++i)
        for (std::uint64_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            m[i][cols_[k]] += vals_[k];
    return m;
}

SparseBuilder::SparseBuilder(std::uint64_t dim) : dim_(dim) {
    row_ptr_.reserve(dim + 1);
    row_ptr_.push_back(0);
}

void SparseBuilder::add_to_current_row(std::uint64_t col, double value) {
    scratch_.emplace_back(col, value);
}

void SparseBuilder::finish_row() {
    std::sort(scratch_.begin(), scratch_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < scratch_.size();) {
        std::uint64_t col = scratch_[i].first;
        double sum = 0.0;
        while (i < scratch_.size() && scratch_[i].first == col) sum += scratch_[i++].second;
        if (sum != 0.0) {
            cols_.push_back(col);
            vals_.push_back(sum);
        }
    }
    scratch_.clear();
    row_ptr_.push_back(cols_.size());
    ++rows_done_;
}

SparseOperator SparseBuilder::build() {
    if (rows_done_ != dim_) throw DimensionMismatch("builder finished with missing rows");
    return SparseOperator(dim_, std::move(row_ptr_), std::move(cols_), std::move(vals_));
}

}  // namespace pamed
