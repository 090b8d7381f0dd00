#pragma once

// Data-parallel kernels behind the exact linear algebra.
//
// Every kernel has a serial reference in rht::kernels::serial and an OpenMP
// version in rht::kernels::parallel. Both must produce identical results; the
// unit tests and the benchmark compare them. Code outside this header calls
// the dispatching wrappers at the bottom.

#include "rht/rational.hpp"

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace rht {

/// Sparse coordinate vector: strictly increasing indices, nonzero values.
class SparseVec {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVec() = default;
    explicit SparseVec(std::vector<Entry> entries); // sorts, merges, drops zeros

    static SparseVec unit(std::size_t index);

    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
    [[nodiscard]] std::size_t leading() const { return entries_.front().first; }
    [[nodiscard]] const Rational& leading_value() const { return entries_.front().second; }

    /// Value at index (zero if absent).
    [[nodiscard]] Rational at(std::size_t index) const;
    [[nodiscard]] const Rational* find(std::size_t index) const;

    /// this += factor * other
    void axpy(const Rational& factor, const SparseVec& other);
    void scale(const Rational& factor);

    /// Entries with index < split, and entries >= split shifted down by split.
    [[nodiscard]] SparseVec head(std::size_t split) const;
    [[nodiscard]] SparseVec tail(std::size_t split) const;
    /// Concatenation with other placed at offset.
    [[nodiscard]] SparseVec append(const SparseVec& other, std::size_t offset) const;

    friend bool operator==(const SparseVec&, const SparseVec&) = default;

private:
    std::vector<Entry> entries_;
};

/// Fully reduced row echelon form. Pivot = leftmost nonzero column of a row;
/// rows are sorted by pivot, every pivot is 1 and is the only nonzero entry in
/// its column. The form is unique for a given row space.
struct Echelon {
    std::size_t dim = 0;
    std::vector<SparseVec> rows;
    std::vector<std::size_t> pivots;

    [[nodiscard]] std::size_t rank() const { return rows.size(); }
};

namespace kernels {

namespace serial {
Echelon rref(std::vector<SparseVec> rows, std::size_t dim);
std::vector<SparseVec> map_range(std::size_t count, const std::function<SparseVec(std::size_t)>& fn);
} // namespace serial

namespace parallel {
Echelon rref(std::vector<SparseVec> rows, std::size_t dim);
std::vector<SparseVec> map_range(std::size_t count, const std::function<SparseVec(std::size_t)>& fn);
} // namespace parallel

/// True when the parallel kernels were compiled with OpenMP.
bool openmp_enabled();
int max_threads();

} // namespace kernels

/// Dispatches to the OpenMP kernel when available.
Echelon rref(std::vector<SparseVec> rows, std::size_t dim);
/// Evaluates fn(i) for i in [0, count); fn must be safe to call concurrently.
std::vector<SparseVec> map_range(std::size_t count, const std::function<SparseVec(std::size_t)>& fn);

} // namespace rht
