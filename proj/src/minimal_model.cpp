#include "rht/minimal_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rht {

std::vector<std::uint32_t> MinimalModel::generators_of_degree(int k) const
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < model.generator_count(); ++i)
        if (model.generator(i).degree == k)
            out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

namespace {

Element raw_copy(const Element& x)
{
    Element out;
    for (const auto& [m, c] : x.terms())
        out.add_term(m, c);
    return out;
}

std::vector<Element> raw_differentials(const Cdga& a)
{
    std::vector<Element> d;
    for (std::size_t i = 0; i < a.generator_count(); ++i)
        d.push_back(raw_copy(a.d_of_generator(i)));
    return d;
}

// Ring-generator name for a basis monomial that is a single generator.
std::optional<std::string> single_generator_name(const Cdga& a, const Element& x)
{
    if (x.terms().size() != 1)
        return std::nullopt;
    const auto& [m, c] = *x.terms().begin();
    if (c != 1 || m.length() != 1)
        return std::nullopt;
    return a.generator(m.factors().front().first).name;
}

SparseVec permute(const SparseVec& v, const std::vector<std::size_t>& perm)
{
    std::vector<SparseVec::Entry> entries;
    entries.reserve(v.size());
    for (const auto& [i, c] : v.entries())
        entries.emplace_back(perm[i], c);
    return SparseVec(std::move(entries));
}

} // namespace

std::optional<std::string> minimality_defect(const Cdga& model)
{
    for (std::size_t i = 0; i < model.generator_count(); ++i)
        for (const auto& [m, c] : model.d_of_generator(i).terms())
            if (m.length() <= 1)
                return model.generator(i).name;
    return std::nullopt;
}

// ---------------------------------------------------------------- depth

int DepthFiltration::monomial_depth(const Monomial& m) const
{
    int s = 0;
    for (const auto& [g, e] : m.factors())
        s += depth.at(g) * static_cast<int>(e);
    return s;
}

int DepthFiltration::level(const Element& x) const
{
    int l = -1;
    for (const auto& [m, c] : x.terms())
        l = std::max(l, monomial_depth(m));
    return l;
}

std::size_t DepthFiltration::dimension(const Cdga& model, int k, int l) const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < model.generator_count(); ++i)
        if (model.generator(i).degree == k && depth[i] <= l)
            ++n;
    return n;
}

std::size_t DepthFiltration::count_exact(const Cdga& model, int k, int l) const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < model.generator_count(); ++i)
        if (model.generator(i).degree == k && depth[i] == l)
            ++n;
    return n;
}

DepthFiltration depth_filtration(const Cdga& model)
{
    DepthFiltration f;
    f.depth.assign(model.generator_count(), 0);
    for (std::size_t sweep = 0; sweep <= model.generator_count() + 1; ++sweep) {
        bool changed = false;
        for (std::size_t i = 0; i < model.generator_count(); ++i) {
            const Element& dv = model.d_of_generator(i);
            int d = dv.is_zero() ? 0 : 1 + std::max(0, f.level(dv));
            if (d != f.depth[i]) {
                f.depth[i] = d;
                changed = true;
            }
        }
        if (!changed)
            return f;
    }
    throw AlgebraError("depth filtration does not stabilise (differential is not minimal)");
}

// ---------------------------------------------------------------- stagewise model

MinimalModel minimal_model(const Cdga& target, int cap, const ModelOptions& options)
{
    if (cap < 0)
        throw std::invalid_argument("minimal_model: cap must be non-negative");
    if (DegreeCohomology(target, 1).rank() != 0)
        throw AlgebraError("minimal_model: target is not simply connected (H^1 != 0)");

    Cdga m;
    std::vector<Element> images;
    DgaMorphism phi(m, target, {});

    for (int k = 2; k <= cap; ++k) {
        // Classes of H^{k+1}(phi) in C^{k+1} = M^{k+1} (+) A^k. Coordinates are
        // permuted so that monomials of higher depth come first; the greedy
        // choice below then prefers representatives of the lowest depth.
        DepthFiltration depth = depth_filtration(m);
        const auto& mbasis = m.graded_basis(k + 1);
        const std::size_t mdim = mbasis.size();
        const std::size_t cdim = mdim + target.dimension(k);
        std::vector<std::size_t> order(mdim);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return depth.monomial_depth(mbasis[a]) > depth.monomial_depth(mbasis[b]);
        });
        std::vector<std::size_t> perm(cdim), inverse(cdim);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t pos = 0; pos < mdim; ++pos)
            perm[order[pos]] = pos;
        for (std::size_t i = 0; i < cdim; ++i)
            inverse[perm[i]] = i;

        LinearMap d_in = relative_differential(phi, k);
        LinearMap d_out = relative_differential(phi, k + 1);
        for (auto& col : d_in.columns)
            col = permute(col, perm);
        LinearMap d_out_p = d_out;
        for (std::size_t j = 0; j < cdim; ++j)
            d_out_p.columns[j] = d_out.columns[inverse[j]];
        CochainCohomology h(d_in, d_out_p);

        struct Chosen {
            Element z;
            Element alpha;
            int depth;
        };
        std::vector<Chosen> chosen;
        IncrementalEchelon span(cdim);
        for (const auto& row : h.coboundaries().rows)
            span.add(row);
        const auto& z_rows = h.cocycles().rows;
        for (std::size_t r = z_rows.size(); r-- > 0;) {
            if (!span.add(z_rows[r]))
                continue;
            SparseVec rep = permute(reduce(h.coboundaries(), z_rows[r]), inverse);
            auto [z, alpha] = split_relative(phi, k + 1, rep);
            int dz = z.is_zero() ? 0 : 1 + std::max(0, depth.level(z));
            chosen.push_back({z, alpha, dz});
        }
        std::reverse(chosen.begin(), chosen.end());
        std::stable_sort(chosen.begin(), chosen.end(),
                         [](const Chosen& a, const Chosen& b) { return a.depth < b.depth; });

        if (!chosen.empty()) {
            std::vector<Generator> gens;
            std::vector<Element> dgen;
            std::map<int, int> counter;
            std::set<std::string> used;
            for (const auto& g : m.generators())
                used.insert(g.name);
            for (const auto& c : chosen) {
                std::string name;
                if (c.z.is_zero())
                    if (auto n = single_generator_name(target, c.alpha); n && !used.contains(*n))
                        name = *n;
                if (name.empty())
                    name = "v" + std::to_string(k) + "_" + std::to_string(c.depth) + "_" +
                           std::to_string(counter[c.depth]++);
                used.insert(name);
                gens.push_back({name, k, std::nullopt});
                dgen.push_back(raw_copy(c.z));
                images.push_back(c.alpha);
            }
            m = m.extended(std::move(gens), std::move(dgen));
            phi = DgaMorphism(m, target, images);
        }
        if (options.on_stage)
            options.on_stage(k, chosen.size());
    }

    if (auto bad = minimality_defect(m))
        throw std::logic_error("minimal_model: generator " + *bad + " has a linear differential");
    auto qi = check_quasi_isomorphism(phi, cap);
    if (!qi.ok)
        throw std::logic_error("minimal_model: constructed map is not a quasi-isomorphism in degree " +
                               std::to_string(*qi.failing_degree));
    MinimalModel result{m, phi, cap, false, m.generator_count() == 0, {}};
    if (result.trivial)
        result.warnings.push_back("cap " + std::to_string(cap) + " is below the first generator degree");
    return result;
}

// ---------------------------------------------------------------- bigraded model

namespace {

int lower_degree(const Cdga& m, const Monomial& mono)
{
    int s = 0;
    for (const auto& [g, e] : mono.factors())
        s += m.generator(g).stage.value_or(0) * static_cast<int>(e);
    return s;
}

} // namespace

MinimalModel bigraded_model(const Cdga& ring, int cap)
{
    for (std::size_t i = 0; i < ring.generator_count(); ++i)
        if (!ring.d_of_generator(i).is_zero())
            throw AlgebraError("bigraded_model: ring presentation must have zero differential");
    if (ring.dimension(1) != 0)
        throw AlgebraError("bigraded_model: ring is not simply connected (degree-1 classes)");
    if (cap < 0)
        throw std::invalid_argument("bigraded_model: cap must be non-negative");

    Cdga m;
    std::vector<Element> images;
    std::set<std::string> used;
    auto rho_vector = [&](const std::vector<Element>& imgs, const Monomial& mono, int k) {
        Element x = ring.one();
        for (const auto& [g, e] : mono.factors())
            x = ring.multiply(x, ring.power(imgs[g], e));
        return ring.to_vector(x, k);
    };

    for (int k = 2; k <= cap; ++k) {
        // W_0 in degree k: a complement of the image of the closed part.
        {
            IncrementalEchelon img(ring.dimension(k));
            for (const auto& mono : m.graded_basis(k))
                img.add(rho_vector(images, mono, k));
            std::vector<Generator> gens;
            std::vector<Element> dgen;
            int j = 0;
            const auto& hb = ring.graded_basis(k);
            for (std::size_t i = 0; i < hb.size(); ++i) {
                if (!img.add(SparseVec::unit(i)))
                    continue;
                Element target = ring.adopt(Element::monomial(hb[i]));
                std::string name;
                if (auto n = single_generator_name(ring, target); n && !used.contains(*n))
                    name = *n;
                else
                    name = "w0_" + std::to_string(k) + "_" + std::to_string(j++);
                used.insert(name);
                gens.push_back({name, k, 0});
                dgen.emplace_back();
                images.push_back(target);
            }
            if (!gens.empty())
                m = m.extended(std::move(gens), std::move(dgen));
        }

        // W_{j+1} in degree k kills the lower-degree-j cohomology in degree k+1.
        for (int j = 0;; ++j) {
            const auto& upper = m.graded_basis(k + 1);
            int max_lower = -1;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < upper.size(); ++i) {
                int l = lower_degree(m, upper[i]);
                max_lower = std::max(max_lower, l);
                if (l == j)
                    idx.push_back(i);
            }
            if (j > max_lower)
                break;
            std::map<std::size_t, std::size_t> local;
            for (std::size_t i = 0; i < idx.size(); ++i)
                local[idx[i]] = i;
            auto localize = [&](const SparseVec& v) {
                std::vector<SparseVec::Entry> e;
                for (const auto& [i, c] : v.entries())
                    e.emplace_back(local.at(i), c);
                return SparseVec(std::move(e));
            };

            LinearMap z_map;
            z_map.source_dim = idx.size();
            if (j == 0) {
                z_map.target_dim = ring.dimension(k + 1);
                for (std::size_t i : idx)
                    z_map.columns.push_back(rho_vector(images, upper[i], k + 1));
            } else {
                z_map.target_dim = m.dimension(k + 2);
                for (std::size_t i : idx)
                    z_map.columns.push_back(
                        m.to_vector(m.differential(m.adopt(Element::monomial(upper[i]))), k + 2));
            }
            Echelon z = LinearSolver(z_map).kernel();

            std::vector<SparseVec> b_rows;
            for (const auto& mono : m.graded_basis(k))
                if (lower_degree(m, mono) == j + 1)
                    b_rows.push_back(localize(m.to_vector(m.differential(m.adopt(Element::monomial(mono))), k + 1)));
            Echelon b = rht::rref(std::move(b_rows), idx.size());

            IncrementalEchelon span(idx.size());
            for (const auto& row : b.rows)
                span.add(row);
            std::vector<Generator> gens;
            std::vector<Element> dgen;
            int count = 0;
            for (const auto& row : z.rows) {
                if (!span.add(row))
                    continue;
                SparseVec rep = reduce(b, row);
                Element dw = m.adopt(Element());
                for (const auto& [i, c] : rep.entries())
                    dw.add_term(upper[idx[i]], c);
                std::string name = "w" + std::to_string(j + 1) + "_" + std::to_string(k) + "_" +
                                   std::to_string(count++);
                used.insert(name);
                gens.push_back({name, k, j + 1});
                dgen.push_back(raw_copy(dw));
                images.push_back(ring.adopt(Element()));
            }
            if (!gens.empty())
                m = m.extended(std::move(gens), std::move(dgen));
        }
    }

    DgaMorphism rho(m, ring, images);
    if (auto bad = minimality_defect(m))
        throw std::logic_error("bigraded_model: generator " + *bad + " has a linear differential");
    auto qi = check_quasi_isomorphism(rho, cap);
    if (!qi.ok)
        throw std::logic_error("bigraded_model: constructed map is not a quasi-isomorphism in degree " +
                               std::to_string(*qi.failing_degree));
    MinimalModel result{m, rho, cap, true, m.generator_count() == 0, {}};
    if (result.trivial)
        result.warnings.push_back("cap " + std::to_string(cap) + " is below the first generator degree");
    return result;
}

// ---------------------------------------------------------------- automorphisms, distortion

DgaMorphism grading_automorphism(const MinimalModel& mm, const Rational& t)
{
    if (!mm.bigraded)
        throw AlgebraError("grading_automorphism: model has no bigrading");
    if (t == 0)
        throw std::invalid_argument("grading_automorphism: t must be nonzero");
    std::vector<Element> images;
    for (std::size_t i = 0; i < mm.model.generator_count(); ++i) {
        const Generator& g = mm.model.generator(i);
        Element x = Element::generator(static_cast<std::uint32_t>(i));
        x *= power(t, g.stage.value_or(0) + g.degree);
        images.push_back(x);
    }
    return DgaMorphism(mm.model, mm.model, images);
}

std::string to_string(Sharpness s)
{
    return s == Sharpness::SharpIfScalable ? "sharp-if-scalable" : "upper-bound-only";
}

DistortionReport distortion_exponent(const Cdga& model, const std::string& generator)
{
    const std::uint32_t i = model.index_of(generator);
    DepthFiltration f = depth_filtration(model);
    DistortionReport r;
    r.generator = generator;
    r.degree = model.generator(i).degree;
    r.depth = f.depth[i];
    r.exponent = r.degree + r.depth;
    r.sharpness = Sharpness::SharpIfScalable;
    return r;
}

DistortionReport distortion_exponent(const MinimalModel& m, const std::string& generator)
{
    return distortion_exponent(m.model, generator);
}

// ---------------------------------------------------------------- cell attachment

CellAttachmentModel attach_cell_model(const MinimalModel& base, int cell_degree,
                                      const std::map<std::string, Rational>& pairing,
                                      const std::string& cell_name)
{
    const Cdga& w = base.model;
    if (w.find(cell_name))
        throw AlgebraError("attach_cell_model: name '" + cell_name + "' is already a generator");
    for (const auto& [name, value] : pairing) {
        auto i = w.find(name);
        if (!i)
            throw AlgebraError("attach_cell_model: unknown generator '" + name + "'");
        if (w.generator(*i).degree != cell_degree - 1)
            throw AlgebraError("attach_cell_model: pairing on " + name + " of degree " +
                               std::to_string(w.generator(*i).degree) + ", expected degree " +
                               std::to_string(cell_degree - 1));
    }
    const auto y = static_cast<std::uint32_t>(w.generator_count());
    std::vector<Generator> gens = w.generators();
    gens.push_back({cell_name, cell_degree, std::nullopt});
    std::vector<Element> d = raw_differentials(w);
    for (const auto& [name, value] : pairing)
        d[w.index_of(name)].add_term(Monomial::generator(y), value);
    d.emplace_back();
    std::vector<Element> relations;
    const Cdga shape = Cdga::free(gens);
    for (std::uint32_t g = 0; g <= y; ++g) {
        auto p = shape.normalize(std::vector<std::uint32_t>{g, y});
        if (p)
            relations.push_back(Element::monomial(p->monomial));
    }
    CellAttachmentModel out{Cdga(gens, d, relations, w.top_degree()), y, cell_degree, pairing, {}};
    DepthFiltration f = depth_filtration(w);
    for (std::size_t i = 0; i < w.generator_count(); ++i)
        if (f.depth[i] == 0)
            out.base_closed.push_back(static_cast<std::uint32_t>(i));
    return out;
}

// ---------------------------------------------------------------- U_0 surjectivity

std::vector<bool> u0_surjectivity(const Cdga& model, const std::vector<std::uint32_t>& closed, int cap)
{
    std::set<std::uint32_t> allowed(closed.begin(), closed.end());
    std::vector<bool> out;
    for (int k = 0; k <= cap; ++k) {
        DegreeCohomology h(model, k);
        if (h.rank() == 0) {
            out.push_back(true);
            continue;
        }
        IncrementalEchelon hit(h.rank());
        for (const auto& mono : model.free_monomials(k)) {
            bool ok = std::all_of(mono.factors().begin(), mono.factors().end(),
                                  [&](const auto& f) { return allowed.contains(f.first); });
            if (!ok)
                continue;
            Element x = model.adopt(Element::monomial(mono));
            if (x.is_zero())
                continue;
            auto c = h.class_of(x);
            if (c)
                hit.add(*c);
        }
        out.push_back(hit.rank() == h.rank());
    }
    return out;
}

std::vector<bool> u0_surjectivity(const MinimalModel& m)
{
    DepthFiltration f = depth_filtration(m.model);
    std::vector<std::uint32_t> closed;
    for (std::size_t i = 0; i < f.depth.size(); ++i)
        if (f.depth[i] == 0)
            closed.push_back(static_cast<std::uint32_t>(i));
    return u0_surjectivity(m.model, closed, m.cap);
}

std::vector<bool> u0_surjectivity(const CellAttachmentModel& m, int cap)
{
    return u0_surjectivity(m.model, m.base_closed, cap);
}

} // namespace rht
