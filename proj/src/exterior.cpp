#include "rht/exterior.hpp"

#include <algorithm>

namespace rht {

namespace {

Cdga exterior_cdga(int n)
{
    if (n < 0)
        throw AlgebraError("exterior algebra dimension must be nonnegative");
    std::vector<Generator> gens;
    for (int i = 1; i <= n; ++i)
        gens.push_back({"dx" + std::to_string(i), 1, std::nullopt});
    return Cdga::free(std::move(gens));
}

} // namespace

ExteriorAlgebra::ExteriorAlgebra(int n) : n_(n), algebra_(exterior_cdga(n)) {}

Element ExteriorAlgebra::dx(const std::vector<int>& indices) const
{
    std::vector<std::uint32_t> word;
    for (int i : indices) {
        if (i < 0 || i >= n_)
            throw AlgebraError("dx index " + std::to_string(i) + " out of range");
        word.push_back(static_cast<std::uint32_t>(i));
    }
    auto sm = algebra_.normalize(word);
    if (!sm)
        return algebra_.adopt(Element{});
    return algebra_.adopt(Element::monomial(sm->monomial, sm->sign));
}

Element ExteriorAlgebra::volume() const
{
    std::vector<int> all(n_);
    for (int i = 0; i < n_; ++i)
        all[i] = i;
    return dx(all);
}

int ExteriorAlgebra::complement_sign(const std::vector<int>& subset) const
{
    std::vector<int> word = subset;
    for (int i = 0; i < n_; ++i)
        if (!std::binary_search(subset.begin(), subset.end(), i))
            word.push_back(i);
    Element e = dx(word);
    if (e.is_zero())
        throw AlgebraError("complement_sign: indices repeat");
    return e.terms().begin()->second > 0 ? 1 : -1;
}

Element ExteriorAlgebra::symplectic_form() const
{
    if (n_ % 2 != 0)
        throw AlgebraError("symplectic form needs an even dimension");
    Element w = algebra_.adopt(Element{});
    for (int i = 0; i + 1 < n_; i += 2)
        w += dx({i, i + 1});
    return w;
}

std::vector<std::size_t> RingPresentation::ranks() const
{
    if (!fundamental)
        throw AlgebraError("ring " + name + " has no fundamental degree");
    std::vector<std::size_t> r;
    for (int k = 0; k <= *fundamental; ++k)
        r.push_back(ring.dimension(k));
    return r;
}

std::optional<std::string> duality_defect(const Cdga& ring, int n)
{
    if (ring.dimension(n) != 1)
        return "degree " + std::to_string(n) + " has rank " + std::to_string(ring.dimension(n)) + ", expected 1";
    for (int k = 0; k <= n; ++k) {
        const auto& lo = ring.graded_basis(k);
        const auto& hi = ring.graded_basis(n - k);
        if (lo.size() != hi.size())
            return "ranks of degrees " + std::to_string(k) + " and " + std::to_string(n - k) + " differ (" +
                   std::to_string(lo.size()) + " vs " + std::to_string(hi.size()) + ")";
        DenseMatrix m(lo.size(), std::vector<Rational>(hi.size()));
        for (std::size_t i = 0; i < lo.size(); ++i)
            for (std::size_t j = 0; j < hi.size(); ++j) {
                Element p = ring.multiply(ring.adopt(Element::monomial(lo[i])), ring.adopt(Element::monomial(hi[j])));
                m[i][j] = ring.to_vector(p, n).at(0);
            }
        if (rank(m) != lo.size())
            return "pairing of degrees " + std::to_string(k) + " and " + std::to_string(n - k) + " is singular";
    }
    return std::nullopt;
}

RingPresentation make_ring(std::string name, std::vector<Generator> generators, std::vector<Element> relations,
                           std::optional<int> fundamental, bool duality)
{
    std::vector<Element> zero(generators.size());
    RingPresentation r{std::move(name), Cdga(std::move(generators), std::move(zero), std::move(relations), fundamental),
                       fundamental, duality};
    if (duality) {
        if (!fundamental)
            throw AlgebraError("ring " + r.name + ": duality needs a fundamental degree");
        if (auto why = duality_defect(r.ring, *fundamental))
            throw AlgebraError("ring " + r.name + ": Poincare duality fails: " + *why);
    }
    return r;
}

Element evaluate(const RingPresentation& ring, const EmbeddingWitness& w, const Element& x)
{
    const Cdga& t = w.target.algebra();
    Element out = t.adopt(Element{});
    for (const auto& [m, c] : x.terms()) {
        Element p = t.one();
        for (const auto& [g, e] : m.factors())
            for (std::uint32_t k = 0; k < e; ++k)
                p = t.multiply(p, w.images.at(g));
        out += c * p;
    }
    (void)ring;
    return out;
}

WitnessCheck verify_witness(const RingPresentation& ring, const EmbeddingWitness& w, bool full)
{
    WitnessCheck res;
    const Cdga& r = ring.ring;
    const Cdga& t = w.target.algebra();
    if (w.images.size() != r.generator_count()) {
        res.failure = "witness has " + std::to_string(w.images.size()) + " images for " +
                      std::to_string(r.generator_count()) + " generators";
        return res;
    }
    for (std::size_t i = 0; i < w.images.size(); ++i) {
        if (!t.contains(w.images[i])) {
            res.failure = "image of " + r.generator(i).name + " is not in the target";
            return res;
        }
        if (w.images[i].is_zero())
            continue;
        auto deg = t.degree(w.images[i]);
        if (!deg || *deg != r.generator(i).degree) {
            res.failure = "image of " + r.generator(i).name + " has the wrong degree";
            return res;
        }
    }
    for (std::size_t i = 0; i < r.relations().size(); ++i) {
        if (!evaluate(ring, w, r.relations()[i]).is_zero()) {
            res.failure = "relation #" + std::to_string(i + 1) + " maps to a nonzero form";
            return res;
        }
    }
    if (ring.fundamental) {
        for (int k = *ring.fundamental + 1; k <= w.target.dimension(); ++k)
            for (const auto& m : r.free_monomials(k))
                if (!evaluate(ring, w, Element::monomial(m)).is_zero()) {
                    res.failure = "a degree " + std::to_string(k) + " product above the fundamental degree survives";
                    return res;
                }
    }
    if (ring.duality && ring.fundamental && !full) {
        res.used_duality_shortcut = true;
        const auto& top = r.graded_basis(*ring.fundamental);
        if (top.size() != 1 || evaluate(ring, w, Element::monomial(top.front())).is_zero()) {
            res.failure = "fundamental class maps to zero";
            return res;
        }
        res.ok = true;
        return res;
    }
    const int last = ring.fundamental ? *ring.fundamental : w.target.dimension();
    for (int k = 0; k <= last; ++k) {
        IncrementalEchelon span(t.dimension(k));
        for (const auto& m : r.graded_basis(k)) {
            if (!span.add(t.to_vector(evaluate(ring, w, Element::monomial(m)), k))) {
                res.failure = "images of the degree " + std::to_string(k) + " basis are dependent";
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

bool RankBoundReport::pass() const
{
    return !first_failure();
}

std::optional<RankBoundEntry> RankBoundReport::first_failure() const
{
    for (const auto& e : degrees)
        if (!e.pass)
            return e;
    return std::nullopt;
}

RankBoundReport rank_bound_check(const std::vector<std::size_t>& ranks, int n)
{
    RankBoundReport rep;
    rep.manifold_dimension = n;
    for (std::size_t k = 0; k < ranks.size(); ++k) {
        RankBoundEntry e;
        e.degree = static_cast<int>(k);
        e.rank = ranks[k];
        e.bound = static_cast<int>(k) <= n ? binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) : 0;
        e.pass = e.rank <= e.bound;
        rep.degrees.push_back(e);
    }
    return rep;
}

RankBoundReport rank_bound_check(const RingPresentation& ring, int n)
{
    std::vector<std::size_t> ranks;
    const int last = ring.fundamental ? std::max(*ring.fundamental, n) : n;
    for (int k = 0; k <= last; ++k)
        ranks.push_back(ring.ring.dimension(k));
    return rank_bound_check(ranks, n);
}

} // namespace rht
