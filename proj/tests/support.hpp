#pragma once

// Shared generators and oracles for the unit tests. Every generator draws from
// a fixed-seed mt19937_64 so failures reproduce.

#include "rht/cdga.hpp"
#include "rht/io.hpp"

#include <random>
#include <string>
#include <vector>

namespace rht::test {

inline std::string data(const std::string& file) { return std::string(RHT_DATA_DIR) + "/" + file; }
inline Presentation fixture(const std::string& file) { return load_presentation(data(file)); }

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed = 0x5eed) : rng(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
    bool coin() { return rng() % 2 == 0; }

    Rational rational(long span = 5)
    {
        long num = static_cast<long>(below(2 * span + 1)) - span;
        if (num == 0)
            num = 1;
        return make_rational(num, static_cast<long>(below(3)) + 1);
    }

    Element element(const Cdga& a, int degree, std::size_t max_terms = 3)
    {
        Element x = a.adopt(Element{});
        const auto& basis = a.graded_basis(degree);
        if (basis.empty())
            return x;
        const std::size_t terms = 1 + below(max_terms);
        for (std::size_t i = 0; i < terms; ++i)
            x += a.adopt(Element::monomial(basis[below(basis.size())], rational()));
        return x;
    }

    int degree(const Cdga& a, int max_degree)
    {
        for (int tries = 0; tries < 64; ++tries) {
            const int k = static_cast<int>(below(static_cast<std::size_t>(max_degree) + 1));
            if (a.dimension(k) > 0)
                return k;
        }
        return 0;
    }

    SparseVec vector(std::size_t dim, double density = 0.4)
    {
        std::vector<SparseVec::Entry> e;
        for (std::size_t i = 0; i < dim; ++i)
            if (static_cast<double>(rng() % 1000) < density * 1000)
                e.emplace_back(i, rational());
        return SparseVec(std::move(e));
    }

    // A random free CDGA: closed generators first, then generators whose
    // differential is a random decomposable in the closed ones (so d^2 = 0
    // holds by construction).
    Cdga free_cdga(std::size_t closed, std::size_t extra, int max_degree = 4)
    {
        std::vector<Generator> gens;
        for (std::size_t i = 0; i < closed; ++i)
            gens.push_back({"x" + std::to_string(i), 1 + static_cast<int>(below(max_degree)), std::nullopt});
        const Cdga base = Cdga::free(gens);
        std::vector<Element> d(closed);
        for (std::size_t i = 0; i < extra; ++i) {
            const int target = 2 + static_cast<int>(below(2 * max_degree - 1));
            Element dv = element(base, target);
            // keep the differential decomposable
            dv = part_of_length(dv, 2) + part_of_length(dv, 3) + part_of_length(dv, 4);
            gens.push_back({"y" + std::to_string(i), target - 1, std::nullopt});
            d.push_back(Element(dv));
        }
        std::vector<Element> raw;
        for (auto& x : d) {
            Element r;
            for (const auto& [m, c] : x.terms())
                r.add_term(m, c);
            raw.push_back(r);
        }
        return Cdga(gens, raw);
    }
};

/// Rank of a dense rational matrix by plain Gaussian elimination; kept
/// separate from the library's sparse echelon code on purpose.
inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            const mpq_class f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<mpq_class>> dense(const LinearMap& map)
{
    std::vector<std::vector<mpq_class>> m(map.columns.size(), std::vector<mpq_class>(map.target_dim));
    for (std::size_t j = 0; j < map.columns.size(); ++j)
        for (const auto& [i, v] : map.columns[j].entries())
            m[j][i] = v;
    return m;
}

} // namespace rht::test
