#ifndef PAMED_SPARSE_HPP
#define PAMED_SPARSE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pamed/fock.hpp"

namespace pamed {

/// Row-compressed real symmetric operator on a SectorBasis. Entries within a
/// row are sorted by column and carry no explicit zeros; off-diagonal entries
/// are stored mirrored so the matrix equals its transpose bit-for-bit.
class SparseOperator {
public:
    SparseOperator() = default;
    SparseOperator(std::uint64_t dim, std::vector<std::uint64_t> row_ptr,
                   std::vector<std::uint64_t> cols, std::vector<double> vals);

    std::uint64_t dim() const { return dim_; }
    std::uint64_t nnz() const { return vals_.size(); }
    const std::vector<std::uint64_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::uint64_t>& cols() const { return cols_; }
    const std::vector<double>& values() const { return vals_; }

    /// y = A x with deterministic summation order (ascending row, ascending
    /// stored column). Output buffer must be distinct from x.
    void matvec(const double* x, double* y) const;
    StateVector matvec(const StateVector& x) const;

    /// Bit-exact symmetry of the stored entries.
    bool is_symmetric() const;

    /// Coordinate text format, one `row col value` per line.
    void write_coo(std::ostream& out) const;

    std::vector<std::vector<double>> to_dense() const;

private:
    std::uint64_t dim_ = 0;
    std::vector<std::uint64_t> row_ptr_;
    std::vector<std::uint64_t> cols_;
    std::vector<double> vals_;
};

/// Row-by-row assembly helper; rows must be appended in ascending order and
/// duplicate columns within a row are accumulated.
class SparseBuilder {
public:
    explicit SparseBuilder(std::uint64_t dim);
    void add_to_current_row(std::uint64_t col, double value);
    void finish_row();
    SparseOperator build();

private:
    std::uint64_t dim_;
    std::uint64_t rows_done_ = 0;
    std::vector<std::pair<std::uint64_t, double>> scratch_;
    std::vector<std::uint64_t> row_ptr_;
    std::vector<std::uint64_t> cols_;
    std::vector<double> vals_;
};

}  // namespace pamed

#endif  // PAMED_SPARSE_HPP
