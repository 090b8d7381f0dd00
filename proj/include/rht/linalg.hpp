#pragma once

#include "rht/kernels.hpp"

#include <optional>
#include <vector>

namespace rht {

/// Subtracts multiples of echelon rows so that v vanishes on every pivot column.
SparseVec reduce(const Echelon& e, SparseVec v);

/// Coordinates of v in the row basis of e, or nullopt if v is outside the span.
std::optional<SparseVec> coordinates(const Echelon& e, const SparseVec& v);

/// Row space grown one vector at a time; keeps a fully reduced basis.
class IncrementalEchelon {
public:
    explicit IncrementalEchelon(std::size_t dim = 0) : dim_(dim) {}

    /// Adds v when it is independent of the rows so far; returns whether it was.
    bool add(SparseVec v);
    [[nodiscard]] SparseVec reduce(SparseVec v) const;
    [[nodiscard]] bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }
    [[nodiscard]] Echelon echelon() const;

private:
    std::size_t dim_;
    std::vector<SparseVec> rows_;
};

/// A linear map given by the images of the source basis vectors.
struct LinearMap {
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
    std::vector<SparseVec> columns;

    [[nodiscard]] SparseVec apply(const SparseVec& x) const;
};

/// Factorisation of a linear map that answers kernel, image and solve queries.
///
/// Built from the echelon form of the augmented rows (image_i | e_i): rows with
/// a pivot in the image block span the image, the remaining rows span the
/// kernel. Solutions are reduced against the kernel rows, so every returned
/// preimage is the canonical representative of its coset.
class LinearSolver {
public:
    explicit LinearSolver(const LinearMap& map);

    [[nodiscard]] std::size_t rank() const { return image_.rank(); }
    [[nodiscard]] const Echelon& image() const { return image_; }
    [[nodiscard]] const Echelon& kernel() const { return kernel_; }

    /// Canonical x with map(x) = b, or nullopt.
    [[nodiscard]] std::optional<SparseVec> solve(const SparseVec& b) const;

private:
    std::size_t source_dim_;
    std::size_t target_dim_;
    std::vector<SparseVec> image_rows_; // full augmented rows with image pivots
    Echelon image_;
    Echelon kernel_;
};

/// Dense symmetric matrix inertia (positive, negative, zero) by exact
/// congruence elimination.
struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

using DenseMatrix = std::vector<std::vector<Rational>>;

Inertia inertia(DenseMatrix m);
std::size_t rank(const DenseMatrix& m);

} // namespace rht
