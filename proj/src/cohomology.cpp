#include "rht/cohomology.hpp"

namespace rht {

namespace {

LinearSolver checked_solver(const LinearMap& d_in, const LinearMap& d_out)
{
    if (d_in.target_dim != d_out.source_dim)
        throw std::invalid_argument("CochainCohomology: differentials do not compose");
    return LinearSolver(d_in);
}

LinearMap zero_map(std::size_t source, std::size_t target)
{
    LinearMap m;
    m.source_dim = source;
    m.target_dim = target;
    m.columns.assign(source, SparseVec());
    return m;
}

} // namespace

CochainCohomology::CochainCohomology(const LinearMap& d_in, const LinearMap& d_out)
    : dim_(d_out.source_dim), d_out_(d_out), in_solver_(checked_solver(d_in, d_out))
{
    cocycles_ = LinearSolver(d_out).kernel();
    coboundaries_ = in_solver_.image();
    std::vector<SparseVec> reduced;
    for (const auto& z : cocycles_.rows) {
        SparseVec r = reduce(coboundaries_, z);
        if (!r.empty())
            reduced.push_back(std::move(r));
    }
    classes_ = rht::rref(std::move(reduced), dim_);
}

bool CochainCohomology::is_cocycle(const SparseVec& v) const
{
    return d_out_.apply(v).empty();
}

std::optional<SparseVec> CochainCohomology::class_of(const SparseVec& v) const
{
    if (!is_cocycle(v))
        return std::nullopt;
    auto c = coordinates(classes_, reduce(coboundaries_, v));
    if (!c)
        throw std::logic_error("CochainCohomology: cocycle outside cocycles + coboundaries");
    return c;
}

std::optional<SparseVec> CochainCohomology::primitive(const SparseVec& v) const
{
    return in_solver_.solve(v);
}

// ---------------------------------------------------------------- absolute

DegreeCohomology::DegreeCohomology(const Cdga& algebra, int degree)
    : algebra_(algebra), degree_(degree),
      space_(degree > 0 ? algebra.differential_map(degree - 1) : zero_map(0, algebra.dimension(degree)),
             algebra.differential_map(degree))
{
}

std::vector<CohomologyClass> DegreeCohomology::classes() const
{
    std::vector<CohomologyClass> out;
    for (const auto& row : space_.classes().rows)
        out.push_back({degree_, algebra_.from_vector(row, degree_)});
    return out;
}

bool DegreeCohomology::is_cocycle(const Element& x) const
{
    return space_.is_cocycle(algebra_.to_vector(x, degree_));
}

std::optional<SparseVec> DegreeCohomology::class_of(const Element& x) const
{
    return space_.class_of(algebra_.to_vector(x, degree_));
}

bool DegreeCohomology::is_exact(const Element& x) const
{
    return primitive(x).has_value();
}

std::optional<Element> DegreeCohomology::primitive(const Element& x) const
{
    auto w = space_.primitive(algebra_.to_vector(x, degree_));
    if (!w)
        return std::nullopt;
    return algebra_.from_vector(*w, degree_ - 1);
}

CohomologyResult cohomology(const Cdga& algebra, int k, int cap)
{
    if (k > cap)
        throw CapError("degree " + std::to_string(k) + " is above the truncation cap " +
                       std::to_string(cap));
    CohomologyResult r;
    r.degree = k;
    r.cap = cap;
    if (k < 0)
        return r;
    DegreeCohomology h(algebra, k);
    r.rank = h.rank();
    r.dimension = h.dimension();
    r.cocycle_rank = h.space().cocycles().rank();
    r.coboundary_rank = h.space().coboundaries().rank();
    r.classes = h.classes();
    return r;
}

// ---------------------------------------------------------------- relative

LinearMap relative_differential(const DgaMorphism& phi, int n)
{
    const Cdga& a = phi.source();
    const Cdga& b = phi.target();
    const std::size_t an = n >= 0 ? a.dimension(n) : 0;
    const std::size_t bn1 = n >= 1 ? b.dimension(n - 1) : 0;
    const std::size_t an1 = n + 1 >= 0 ? a.dimension(n + 1) : 0;
    const std::size_t bn = n >= 0 ? b.dimension(n) : 0;
    LinearMap map;
    map.source_dim = an + bn1;
    map.target_dim = an1 + bn;
    if (n < -1)
        return zero_map(map.source_dim, map.target_dim);
    map.columns = rht::map_range(map.source_dim, [&](std::size_t i) {
        if (i < an) {
            Element x = a.from_vector(SparseVec::unit(i), n);
            SparseVec da = a.to_vector(a.differential(x), n + 1);
            SparseVec fa = b.to_vector(phi.apply(x), n);
            return da.append(fa, an1);
        }
        Element y = b.from_vector(SparseVec::unit(i - an), n - 1);
        SparseVec db = b.to_vector(b.differential(y), n);
        db.scale(-1);
        return SparseVec().append(db, an1);
    });
    return map;
}

std::pair<Element, Element> split_relative(const DgaMorphism& phi, int n, const SparseVec& v)
{
    const std::size_t an = n >= 0 ? phi.source().dimension(n) : 0;
    Element a = n >= 0 ? phi.source().from_vector(v.head(an), n) : phi.source().adopt(Element());
    Element b = n >= 1 ? phi.target().from_vector(v.tail(an), n - 1) : phi.target().adopt(Element());
    return {a, b};
}

SparseVec join_relative(const DgaMorphism& phi, int n, const Element& a, const Element& b)
{
    const std::size_t an = n >= 0 ? phi.source().dimension(n) : 0;
    SparseVec va = a.is_zero() ? SparseVec() : phi.source().to_vector(a, n);
    SparseVec vb = b.is_zero() ? SparseVec() : phi.target().to_vector(b, n - 1);
    return va.append(vb, an);
}

RelativeCohomology::RelativeCohomology(const DgaMorphism& phi, int degree)
    : phi_(phi), degree_(degree),
      space_(relative_differential(phi, degree - 1), relative_differential(phi, degree))
{
}

std::vector<std::pair<Element, Element>> RelativeCohomology::classes() const
{
    std::vector<std::pair<Element, Element>> out;
    for (const auto& row : space_.classes().rows)
        out.push_back(split_relative(phi_, degree_, row));
    return out;
}

bool RelativeCohomology::is_cocycle(const Element& a, const Element& b) const
{
    return space_.is_cocycle(join_relative(phi_, degree_, a, b));
}

std::optional<SparseVec> RelativeCohomology::class_of(const Element& a, const Element& b) const
{
    return space_.class_of(join_relative(phi_, degree_, a, b));
}

std::optional<std::pair<Element, Element>> RelativeCohomology::primitive(const Element& a,
                                                                         const Element& b) const
{
    auto w = space_.primitive(join_relative(phi_, degree_, a, b));
    if (!w)
        return std::nullopt;
    return split_relative(phi_, degree_ - 1, *w);
}

RelativeResult relative_cohomology(const DgaMorphism& phi, int k, std::size_t coefficient_dim)
{
    RelativeCohomology h(phi, k);
    RelativeResult r;
    r.degree = k;
    r.coefficient_dim = coefficient_dim;
    r.cone_rank = h.rank();
    r.rank = coefficient_dim * h.rank();
    r.classes = h.classes();
    return r;
}

LinearMap induced_map(const DgaMorphism& phi, int k)
{
    DegreeCohomology ha(phi.source(), k);
    DegreeCohomology hb(phi.target(), k);
    LinearMap m;
    m.source_dim = ha.rank();
    m.target_dim = hb.rank();
    for (const auto& c : ha.classes())
    {
        auto v = hb.class_of(phi.apply(c.representative));
        if (!v)
            throw AlgebraError("induced_map: image of a cocycle is not a cocycle");
        m.columns.push_back(*v);
    }
    return m;
}

QuasiIsoReport check_quasi_isomorphism(const DgaMorphism& phi, int cap)
{
    QuasiIsoReport report;
    report.cap = cap;
    for (int k = 0; k <= cap; ++k) {
        LinearMap m = induced_map(phi, k);
        const std::size_t r = LinearSolver(m).rank();
        if (r != m.source_dim || r != m.target_dim) {
            report.ok = false;
            report.failing_degree = k;
            report.source_rank = m.source_dim;
            report.target_rank = m.target_dim;
            report.map_rank = r;
            return report;
        }
    }
    return report;
}

bool is_quasi_isomorphism(const DgaMorphism& phi, int cap)
{
    return check_quasi_isomorphism(phi, cap).ok;
}

namespace {

// Exact at the middle space X of W -f-> X -g-> Y.
bool exact_at(const LinearMap& f, const LinearMap& g)
{
    for (const auto& col : f.columns)
        if (!g.apply(col).empty())
            return false;
    const std::size_t rf = f.source_dim ? LinearSolver(f).rank() : 0;
    const std::size_t rg = g.source_dim ? LinearSolver(g).rank() : 0;
    return rf + rg == g.source_dim;
}

} // namespace

std::optional<std::string> long_exact_sequence_defect(const DgaMorphism& phi, int k)
{
    const Cdga& a = phi.source();
    const Cdga& b = phi.target();
    RelativeCohomology rel_k(phi, k);
    RelativeCohomology rel_k1(phi, k + 1);
    DegreeCohomology ha(a, k);
    DegreeCohomology hb_prev(b, k - 1 >= 0 ? k - 1 : 0);
    DegreeCohomology hb(b, k);

    // delta_{k-1}: H^{k-1}(B) -> H^k(phi), [b] -> [(0, b)]
    LinearMap delta_prev;
    delta_prev.target_dim = rel_k.rank();
    if (k >= 1) {
        delta_prev.source_dim = hb_prev.rank();
        for (const auto& c : hb_prev.classes())
        {
            auto v = rel_k.class_of(a.adopt(Element()), c.representative);
            if (!v)
                throw AlgebraError("relative cohomology: boundary map left the cocycles");
            delta_prev.columns.push_back(*v);
        }
    }
    // alpha_k: H^k(phi) -> H^k(A), [(a, b)] -> [a]
    LinearMap alpha;
    alpha.source_dim = rel_k.rank();
    alpha.target_dim = ha.rank();
    for (const auto& [x, y] : rel_k.classes())
    {
        auto v = ha.class_of(x);
        if (!v)
            throw AlgebraError("relative cohomology: projection left the cocycles");
        alpha.columns.push_back(*v);
    }
    LinearMap phi_k = induced_map(phi, k);
    // delta_k: H^k(B) -> H^{k+1}(phi)
    LinearMap delta;
    delta.source_dim = hb.rank();
    delta.target_dim = rel_k1.rank();
    for (const auto& c : hb.classes())
        delta.columns.push_back(*rel_k1.class_of(a.adopt(Element()), c.representative));

    if (!exact_at(delta_prev, alpha))
        return "H^" + std::to_string(k) + "(phi)";
    if (!exact_at(alpha, phi_k))
        return "H^" + std::to_string(k) + "(A)";
    if (!exact_at(phi_k, delta))
        return "H^" + std::to_string(k) + "(B)";
    return std::nullopt;
}

} // namespace rht
