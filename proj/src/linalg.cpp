#include "rht/linalg.hpp"

#include <stdexcept>

namespace rht {

SparseVec reduce(const Echelon& e, SparseVec v)
{
    for (std::size_t i = 0; i < e.rows.size() && !v.empty(); ++i) {
        if (const Rational* c = v.find(e.pivots[i])) {
            Rational factor = -*c;
            v.axpy(factor, e.rows[i]);
        }
    }
    return v;
}

std::optional<SparseVec> coordinates(const Echelon& e, const SparseVec& v)
{
    std::vector<SparseVec::Entry> coords;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
        if (const Rational* c = v.find(e.pivots[i]))
            coords.emplace_back(i, *c);
    SparseVec residual = v;
    for (const auto& [i, c] : coords)
        residual.axpy(-c, e.rows[i]);
    if (!residual.empty())
        return std::nullopt;
    return SparseVec(std::move(coords));
}

bool IncrementalEchelon::add(SparseVec v)
{
    v = reduce(std::move(v));
    if (v.empty())
        return false;
    v.scale(1 / Rational(v.leading_value()));
    for (auto& row : rows_)
        if (const Rational* c = row.find(v.leading())) {
            Rational factor = -*c;
            row.axpy(factor, v);
        }
    rows_.push_back(std::move(v));
    return true;
}

SparseVec IncrementalEchelon::reduce(SparseVec v) const
{
    for (const auto& row : rows_) {
        if (v.empty())
            break;
        if (const Rational* c = v.find(row.leading())) {
            Rational factor = -*c;
            v.axpy(factor, row);
        }
    }
    return v;
}

Echelon IncrementalEchelon::echelon() const
{
    return kernels::serial::rref(rows_, dim_);
}

SparseVec LinearMap::apply(const SparseVec& x) const
{
    SparseVec out;
    for (const auto& [i, c] : x.entries())
        out.axpy(c, columns.at(i));
    return out;
}

LinearSolver::LinearSolver(const LinearMap& map)
    : source_dim_(map.source_dim), target_dim_(map.target_dim)
{
    if (map.columns.size() != map.source_dim)
        throw std::invalid_argument("LinearMap: column count does not match source dimension");
    std::vector<SparseVec> rows;
    rows.reserve(map.source_dim);
    for (std::size_t i = 0; i < map.source_dim; ++i)
        rows.push_back(map.columns[i].append(SparseVec::unit(i), target_dim_));
    Echelon full = rht::rref(std::move(rows), target_dim_ + source_dim_);

    image_.dim = target_dim_;
    kernel_.dim = source_dim_;
    for (std::size_t i = 0; i < full.rows.size(); ++i) {
        if (full.pivots[i] < target_dim_) {
            image_.rows.push_back(full.rows[i].head(target_dim_));
            image_.pivots.push_back(full.pivots[i]);
            image_rows_.push_back(full.rows[i]);
        } else {
            kernel_.rows.push_back(full.rows[i].tail(target_dim_));
            kernel_.pivots.push_back(full.pivots[i] - target_dim_);
        }
    }
}

std::optional<SparseVec> LinearSolver::solve(const SparseVec& b) const
{
    // Each augmented row is (map(lambda) | lambda). Reducing (b | 0) leaves
    // (b - map(lambda) | -lambda).
    SparseVec work = b;
    for (std::size_t i = 0; i < image_rows_.size(); ++i) {
        if (const Rational* c = work.find(image_.pivots[i])) {
            Rational factor = -*c;
            work.axpy(factor, image_rows_[i]);
        }
    }
    if (!work.head(target_dim_).empty())
        return std::nullopt;
    SparseVec x = work.tail(target_dim_);
    x.scale(-1);
    return reduce(kernel_, std::move(x));
}

Inertia inertia(DenseMatrix m)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw std::invalid_argument("inertia: matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m[i][j] != m[j][i])
                throw std::invalid_argument("inertia: matrix is not symmetric");

    Inertia result;
    std::vector<char> done(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n && p == n; ++i)
            if (!done[i] && m[i][i] != 0)
                p = i;
        if (p == n) {
            // No usable diagonal entry: a congruence row_i += row_j makes
            // m[i][i] = 2 m[i][j] nonzero.
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i) {
                if (done[i])
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[j] && j != i && m[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            }
            if (pi == n)
                break;
            for (std::size_t k = 0; k < n; ++k)
                m[pi][k] += m[pj][k];
            for (std::size_t k = 0; k < n; ++k)
                m[k][pi] += m[k][pj];
            p = pi;
        }
        const Rational pivot = m[p][p];
        if (pivot > 0)
            ++result.positive;
        else
            ++result.negative;
        done[p] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || m[i][p] == 0)
                continue;
            const Rational f = m[i][p] / pivot;
            for (std::size_t k = 0; k < n; ++k)
                m[i][k] -= f * m[p][k];
            for (std::size_t k = 0; k < n; ++k)
                m[k][i] -= f * m[k][p];
        }
    }
    result.zero = n - result.positive - result.negative;
    return result;
}

std::size_t rank(const DenseMatrix& m)
{
    std::vector<SparseVec> rows;
    std::size_t dim = 0;
    for (const auto& row : m) {
        dim = std::max(dim, row.size());
        std::vector<SparseVec::Entry> entries;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0)
                entries.emplace_back(j, row[j]);
        rows.emplace_back(std::move(entries));
    }
    return rht::rref(std::move(rows), dim).rank();
}

} // namespace rht
