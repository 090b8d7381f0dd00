#include "rht/kernels.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#ifdef RHT_WITH_OPENMP
#include <omp.h>
#endif

namespace rht {

Rational parse_rational(const std::string& text)
{
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

Rational power(const Rational& t, long k)
{
    Rational result = 1;
    for (long i = 0; i < k; ++i)
        result *= t;
    return result;
}

unsigned long long binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned long long v = 1;
    for (unsigned i = 0; i < k; ++i)
        v = v * (n - i) / (i + 1);
    return v;
}

SparseVec::SparseVec(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& [index, value] : entries) {
        if (!entries_.empty() && entries_.back().first == index)
            entries_.back().second += value;
        else
            entries_.emplace_back(index, std::move(value));
    }
    std::erase_if(entries_, [](const Entry& e) { return e.second == 0; });
}

SparseVec SparseVec::unit(std::size_t index)
{
    SparseVec v;
    v.entries_.emplace_back(index, Rational(1));
    return v;
}

const Rational* SparseVec::find(std::size_t index) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it == entries_.end() || it->first != index)
        return nullptr;
    return &it->second;
}

Rational SparseVec::at(std::size_t index) const
{
    const Rational* v = find(index);
    return v ? *v : Rational(0);
}

void SparseVec::axpy(const Rational& factor, const SparseVec& other)
{
    if (factor == 0 || other.empty())
        return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            merged.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->first < a->first) {
            merged.emplace_back(b->first, factor * b->second);
            ++b;
        } else {
            Rational v = a->second + factor * b->second;
            if (v != 0)
                merged.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

void SparseVec::scale(const Rational& factor)
{
    if (factor == 0) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_)
        e.second *= factor;
}

SparseVec SparseVec::head(std::size_t split) const
{
    SparseVec v;
    for (const auto& e : entries_)
        if (e.first < split)
            v.entries_.push_back(e);
    return v;
}

SparseVec SparseVec::tail(std::size_t split) const
{
    SparseVec v;
    for (const auto& e : entries_)
        if (e.first >= split)
            v.entries_.emplace_back(e.first - split, e.second);
    return v;
}

SparseVec SparseVec::append(const SparseVec& other, std::size_t offset) const
{
    SparseVec v = *this;
    if (!v.entries_.empty() && !other.entries_.empty() && v.entries_.back().first >= offset)
        throw std::logic_error("SparseVec::append: offset overlaps existing entries");
    for (const auto& e : other.entries_)
        v.entries_.emplace_back(e.first + offset, e.second);
    return v;
}

namespace kernels {

namespace {

Echelon collect(std::vector<SparseVec>& rows, const std::vector<char>& is_pivot, std::size_t dim)
{
    Echelon result;
    result.dim = dim;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (is_pivot[i])
            order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows[a].leading() < rows[b].leading(); });
    for (std::size_t i : order) {
        result.pivots.push_back(rows[i].leading());
        result.rows.push_back(std::move(rows[i]));
    }
    return result;
}

} // namespace

namespace serial {

// Incremental insertion: reduce each incoming row against the current basis,
// then clear its pivot column from the rows already accepted.
Echelon rref(std::vector<SparseVec> rows, std::size_t dim)
{
    std::vector<SparseVec> basis;
    for (auto& row : rows) {
        for (const auto& b : basis) {
            if (row.empty())
                break;
            if (const Rational* v = row.find(b.leading()))
                row.axpy(-*v, b);
        }
        if (row.empty())
            continue;
        row.scale(1 / Rational(row.leading_value()));
        for (auto& b : basis)
            if (const Rational* v = b.find(row.leading()))
                b.axpy(-Rational(*v), row);
        basis.push_back(std::move(row));
    }
    std::vector<char> is_pivot(basis.size(), 1);
    return collect(basis, is_pivot, dim);
}

std::vector<SparseVec> map_range(std::size_t count, const std::function<SparseVec(std::size_t)>& fn)
{
    std::vector<SparseVec> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = fn(i);
    return out;
}

} // namespace serial

namespace parallel {

// Gauss-Jordan by column sweep: pick the active row with the leftmost leading
// entry, then eliminate that column from every other row in parallel.
Echelon rref(std::vector<SparseVec> rows, std::size_t dim)
{
    const std::size_t n = rows.size();
    std::vector<char> is_pivot(n, 0);
    std::vector<char> active(n, 1);
    const long count = static_cast<long>(n);

    for (;;) {
        std::size_t best = n;
        std::size_t best_col = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i] || rows[i].empty())
                continue;
            if (rows[i].leading() < best_col) {
                best_col = rows[i].leading();
                best = i;
            }
        }
        if (best == n)
            break;
        SparseVec& pivot = rows[best];
        pivot.scale(1 / Rational(pivot.leading_value()));
        active[best] = 0;
        is_pivot[best] = 1;
        const SparseVec& p = pivot;
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < count; ++i) {
            if (static_cast<std::size_t>(i) == best)
                continue;
            SparseVec& row = rows[static_cast<std::size_t>(i)];
            if (const Rational* v = row.find(best_col)) {
                Rational factor = -*v;
                row.axpy(factor, p);
            }
        }
    }
    return collect(rows, is_pivot, dim);
}

std::vector<SparseVec> map_range(std::size_t count, const std::function<SparseVec(std::size_t)>& fn)
{
    std::vector<SparseVec> out(count);
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return out;
}

} // namespace parallel

bool openmp_enabled()
{
#ifdef RHT_WITH_OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads()
{
#ifdef RHT_WITH_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace kernels

Echelon rref(std::vector<SparseVec> rows, std::size_t dim)
{
#ifdef RHT_WITH_OPENMP
    if (rows.size() > 64 && kernels::max_threads() > 1)
        return kernels::parallel::rref(std::move(rows), dim);
#endif
    return kernels::serial::rref(std::move(rows), dim);
}

std::vector<SparseVec> map_range(std::size_t count, const std::function<SparseVec(std::size_t)>& fn)
{
#ifdef RHT_WITH_OPENMP
    if (count > 8 && kernels::max_threads() > 1)
        return kernels::parallel::map_range(count, fn);
#endif
    return kernels::serial::map_range(count, fn);
}

} // namespace rht
