#include "rht/cdga.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <mutex>
#include <set>

namespace rht {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::generator(std::uint32_t index, std::uint32_t exponent)
{
    Monomial m;
    if (exponent > 0)
        m.factors_.emplace_back(index, exponent);
    return m;
}

Monomial Monomial::from_sorted(std::vector<Factor> factors)
{
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].second == 0)
            throw AlgebraError("Monomial: zero exponent");
        if (i > 0 && factors[i - 1].first >= factors[i].first)
            throw AlgebraError("Monomial: factors not in canonical order");
    }
    Monomial m;
    m.factors_ = std::move(factors);
    return m;
}

std::uint32_t Monomial::length() const
{
    std::uint32_t n = 0;
    for (const auto& f : factors_)
        n += f.second;
    return n;
}

std::uint32_t Monomial::exponent(std::uint32_t index) const
{
    for (const auto& f : factors_)
        if (f.first == index)
            return f.second;
    return 0;
}

bool Monomial::divides(const Monomial& other) const
{
    auto it = other.factors_.begin();
    for (const auto& [g, e] : factors_) {
        while (it != other.factors_.end() && it->first < g)
            ++it;
        if (it == other.factors_.end() || it->first != g || it->second < e)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- Element

Element Element::scalar(const Rational& c)
{
    return monomial(Monomial(), c);
}

Element Element::monomial(const Monomial& m, const Rational& c)
{
    Element x;
    if (c != 0)
        x.terms_.emplace(m, c);
    return x;
}

Element Element::generator(std::uint32_t index)
{
    return monomial(Monomial::generator(index));
}

Rational Element::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Element::check_owner(const Element& other) const
{
    if (owner_ != 0 && other.owner_ != 0 && owner_ != other.owner_)
        throw AlgebraError("elements belong to different algebras");
}

void Element::add_term(const Monomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& other)
{
    check_owner(other);
    if (owner_ == 0)
        owner_ = other.owner_;
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& other)
{
    check_owner(other);
    if (owner_ == 0)
        owner_ = other.owner_;
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

// ---------------------------------------------------------------- Cdga internals

struct Cdga::DegreeData {
    std::vector<Monomial> standard; // free monomials outside the monomial ideal
    std::map<Monomial, std::size_t> standard_index;
    Echelon ideal;                  // span of general relation multiples, over `standard`
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> basis_index;
};

struct Cdga::Impl {
    std::uint64_t id = 0;
    std::vector<Generator> generators;
    std::map<std::string, std::uint32_t> names;
    std::vector<Element> differential;
    std::vector<Element> relations;
    std::optional<int> top_degree;

    std::vector<Monomial> monomial_relations;
    std::vector<std::pair<Element, int>> general_relations;

    mutable std::mutex degree_mutex;
    mutable std::map<int, std::shared_ptr<const DegreeData>> degrees;
    mutable std::mutex d_mutex;
    mutable std::map<Monomial, Element> d_cache;
};

namespace {

std::uint64_t next_algebra_id()
{
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

bool valid_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

Cdga::Cdga() : Cdga(std::vector<Generator>{}, std::vector<Element>{}) {}

Cdga::Cdga(std::vector<Generator> generators, std::vector<Element> differential,
           std::vector<Element> relations, std::optional<int> top_degree)
    : impl_(std::make_shared<Impl>())
{
    impl_->id = next_algebra_id();
    impl_->top_degree = top_degree;
    if (top_degree && *top_degree < 0)
        throw AlgebraError("top degree must be nonnegative");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const Generator& g = generators[i];
        if (!valid_identifier(g.name))
            throw AlgebraError("invalid generator name '" + g.name + "'");
        if (g.degree < 1)
            throw AlgebraError("generator " + g.name + " has degree " + std::to_string(g.degree) +
                               "; degrees must be >= 1");
        if (!impl_->names.emplace(g.name, static_cast<std::uint32_t>(i)).second)
            throw AlgebraError("duplicate generator name '" + g.name + "'");
    }
    impl_->generators = std::move(generators);
    if (differential.empty())
        differential.resize(impl_->generators.size());
    if (differential.size() != impl_->generators.size())
        throw AlgebraError("differential must be given for every generator");

    auto attach_raw = [&](Element x) {
        if (x.owner_ != 0 && x.owner_ != impl_->id)
            throw AlgebraError("element belongs to a different algebra");
        for (const auto& [m, c] : x.terms_)
            for (const auto& f : m.factors())
                if (f.first >= impl_->generators.size())
                    throw AlgebraError("element refers to an unknown generator index");
        x.owner_ = impl_->id;
        return x;
    };

    for (auto& r : relations) {
        Element raw = attach_raw(std::move(r));
        if (raw.is_zero())
            continue;
        if (!is_homogeneous(raw))
            throw AlgebraError("relation is not homogeneous");
        impl_->relations.push_back(raw);
        if (raw.terms().size() == 1)
            impl_->monomial_relations.push_back(raw.terms().begin()->first);
    }
    for (const auto& r : impl_->relations) {
        if (r.terms().size() == 1)
            continue;
        Element reduced;
        reduced.owner_ = impl_->id;
        for (const auto& [m, c] : r.terms())
            if (!in_monomial_ideal(m))
                reduced.add_term(m, c);
        if (!reduced.is_zero())
            impl_->general_relations.emplace_back(reduced, *degree(r));
    }

    impl_->differential.reserve(differential.size());
    for (auto& x : differential)
        impl_->differential.push_back(normal_form(attach_raw(std::move(x))));
    validate();
}

Cdga Cdga::free(std::vector<Generator> generators)
{
    return Cdga(std::move(generators), {});
}

void Cdga::validate() const
{
    const auto& gens = impl_->generators;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const Element& dx = impl_->differential[i];
        if (dx.is_zero())
            continue;
        auto deg = degree(dx);
        if (!deg || *deg != gens[i].degree + 1)
            throw AlgebraError("d(" + gens[i].name + ") must be homogeneous of degree " +
                               std::to_string(gens[i].degree + 1));
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!differential(impl_->differential[i]).is_zero())
            throw AlgebraError("d^2 != 0 on generator " + gens[i].name);
    for (const auto& r : impl_->relations)
        if (!differential(r).is_zero())
            throw AlgebraError("relation ideal is not closed under d");
}

std::uint64_t Cdga::id() const { return impl_->id; }
const std::vector<Generator>& Cdga::generators() const { return impl_->generators; }
const std::vector<Element>& Cdga::relations() const { return impl_->relations; }
std::optional<int> Cdga::top_degree() const { return impl_->top_degree; }
const Element& Cdga::d_of_generator(std::size_t index) const { return impl_->differential.at(index); }

int Cdga::max_generator_degree() const
{
    int m = 0;
    for (const auto& g : impl_->generators)
        m = std::max(m, g.degree);
    return m;
}

std::optional<std::uint32_t> Cdga::find(const std::string& name) const
{
    auto it = impl_->names.find(name);
    if (it == impl_->names.end())
        return std::nullopt;
    return it->second;
}

std::uint32_t Cdga::index_of(const std::string& name) const
{
    auto i = find(name);
    if (!i)
        throw AlgebraError("unknown generator '" + name + "'");
    return *i;
}

Element Cdga::gen(const std::string& name) const
{
    return adopt(Element::generator(index_of(name)));
}

Element Cdga::one() const
{
    return adopt(Element::scalar(1));
}

int Cdga::degree(const Monomial& m) const
{
    int d = 0;
    for (const auto& [g, e] : m.factors())
        d += impl_->generators.at(g).degree * static_cast<int>(e);
    return d;
}

std::optional<int> Cdga::degree(const Element& x) const
{
    std::optional<int> d;
    for (const auto& [m, c] : x.terms()) {
        int k = degree(m);
        if (d && *d != k)
            return std::nullopt;
        d = k;
    }
    return d;
}

bool Cdga::is_homogeneous(const Element& x) const
{
    return x.is_zero() || degree(x).has_value();
}

namespace fault {

namespace {
std::atomic<bool> koszul_fault{false};
}

void set_koszul_sign_fault(bool on)
{
    koszul_fault = on;
}

bool koszul_sign_fault()
{
    return koszul_fault.load(std::memory_order_relaxed);
}

} // namespace fault

std::optional<SignedMonomial> Cdga::normalize(std::span<const std::uint32_t> word) const
{
    std::vector<std::uint32_t> w(word.begin(), word.end());
    int sign = 1;
    // Insertion sort; each swap of two odd letters flips the sign.
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
            if (is_odd(w[j - 1]) && is_odd(w[j]) && !fault::koszul_sign_fault())
                sign = -sign;
            std::swap(w[j - 1], w[j]);
        }
    }
    std::vector<Monomial::Factor> factors;
    for (std::uint32_t g : w) {
        if (g >= generator_count())
            throw AlgebraError("word refers to an unknown generator index");
        if (!factors.empty() && factors.back().first == g) {
            if (is_odd(g))
                return std::nullopt;
            ++factors.back().second;
        } else {
            factors.emplace_back(g, 1);
        }
    }
    return SignedMonomial{Monomial::from_sorted(std::move(factors)), sign};
}

std::optional<SignedMonomial> Cdga::multiply(const Monomial& a, const Monomial& b) const
{
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::vector<Monomial::Factor> out;
    out.reserve(fa.size() + fb.size());
    // Moving an odd factor of b leftwards past every odd factor of a with a
    // larger index costs one sign each.
    std::size_t odd_a_greater = 0;
    for (const auto& f : fa)
        if (is_odd(f.first))
            ++odd_a_greater;
    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
            if (is_odd(fa[i].first))
                --odd_a_greater;
            out.push_back(fa[i++]);
        } else if (i == fa.size() || fb[j].first < fa[i].first) {
            if (is_odd(fb[j].first) && odd_a_greater % 2 == 1 && !fault::koszul_sign_fault())
                sign = -sign;
            out.push_back(fb[j++]);
        } else {
            if (is_odd(fa[i].first))
                return std::nullopt;
            out.emplace_back(fa[i].first, fa[i].second + fb[j].second);
            ++i;
            ++j;
        }
    }
    Monomial m;
    m = Monomial::from_sorted(std::move(out));
    return SignedMonomial{std::move(m), sign};
}

bool Cdga::in_monomial_ideal(const Monomial& m) const
{
    if (impl_->top_degree && degree(m) > *impl_->top_degree)
        return true;
    for (const auto& r : impl_->monomial_relations)
        if (r.divides(m))
            return true;
    return false;
}

bool Cdga::contains(const Element& x) const
{
    if (x.owner() != 0 && x.owner() != impl_->id)
        return false;
    for (const auto& [m, c] : x.terms())
        for (const auto& f : m.factors())
            if (f.first >= generator_count())
                return false;
    return true;
}

Element Cdga::adopt(const Element& x) const
{
    if (!contains(x))
        throw AlgebraError("element does not belong to this algebra");
    Element y = x;
    y.owner_ = impl_->id;
    return normal_form(y);
}

std::vector<Monomial> Cdga::free_monomials(int k) const
{
    std::vector<Monomial> out;
    if (k < 0)
        return out;
    const auto& gens = impl_->generators;
    std::vector<Monomial::Factor> current;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (remaining == 0) {
            out.push_back(Monomial::from_sorted(current));
            return;
        }
        if (i == gens.size())
            return;
        rec(i + 1, remaining);
        const int deg = gens[i].degree;
        const std::uint32_t max_e = is_odd(i) ? 1u : static_cast<std::uint32_t>(remaining / deg);
        for (std::uint32_t e = 1; e <= max_e && static_cast<int>(e) * deg <= remaining; ++e) {
            current.emplace_back(static_cast<std::uint32_t>(i), e);
            rec(i + 1, remaining - static_cast<int>(e) * deg);
            current.pop_back();
        }
    };
    rec(0, k);
    std::sort(out.begin(), out.end());
    return out;
}

const Cdga::DegreeData& Cdga::degree_data(int k) const
{
    {
        std::lock_guard lock(impl_->degree_mutex);
        auto it = impl_->degrees.find(k);
        if (it != impl_->degrees.end())
            return *it->second;
    }
    auto data = std::make_shared<DegreeData>();
    if (k >= 0 && !(impl_->top_degree && k > *impl_->top_degree)) {
        for (auto& m : free_monomials(k))
            if (!in_monomial_ideal(m))
                data->standard.push_back(std::move(m));
        for (std::size_t i = 0; i < data->standard.size(); ++i)
            data->standard_index.emplace(data->standard[i], i);

        std::vector<SparseVec> rows;
        for (const auto& [r, rdeg] : impl_->general_relations) {
            if (rdeg > k)
                continue;
            for (const auto& m : free_monomials(k - rdeg)) {
                if (in_monomial_ideal(m))
                    continue;
                std::vector<SparseVec::Entry> entries;
                for (const auto& [rm, c] : r.terms()) {
                    auto p = multiply(m, rm);
                    if (!p || in_monomial_ideal(p->monomial))
                        continue;
                    entries.emplace_back(data->standard_index.at(p->monomial), c * p->sign);
                }
                SparseVec v(std::move(entries));
                if (!v.empty())
                    rows.push_back(std::move(v));
            }
        }
        data->ideal = rht::rref(std::move(rows), data->standard.size());
        std::set<std::size_t> pivots(data->ideal.pivots.begin(), data->ideal.pivots.end());
        for (std::size_t i = 0; i < data->standard.size(); ++i)
            if (!pivots.contains(i))
                data->basis.push_back(data->standard[i]);
        for (std::size_t i = 0; i < data->basis.size(); ++i)
            data->basis_index.emplace(data->basis[i], i);
    }
    std::lock_guard lock(impl_->degree_mutex);
    auto [it, inserted] = impl_->degrees.emplace(k, std::move(data));
    return *it->second;
}

Element Cdga::normal_form(const Element& x) const
{
    if (x.owner() != 0 && x.owner() != impl_->id)
        throw AlgebraError("element does not belong to this algebra");
    Element out;
    out.owner_ = impl_->id;
    if (impl_->relations.empty() && !impl_->top_degree) {
        out.terms_ = x.terms_;
        return out;
    }
    std::map<int, std::vector<std::pair<Monomial, Rational>>> by_degree;
    for (const auto& [m, c] : x.terms())
        if (!in_monomial_ideal(m))
            by_degree[degree(m)].emplace_back(m, c);
    for (auto& [k, terms] : by_degree) {
        const DegreeData& data = degree_data(k);
        if (data.ideal.rank() == 0) {
            for (auto& [m, c] : terms)
                out.add_term(m, c);
            continue;
        }
        std::vector<SparseVec::Entry> entries;
        for (auto& [m, c] : terms)
            entries.emplace_back(data.standard_index.at(m), c);
        SparseVec v = reduce(data.ideal, SparseVec(std::move(entries)));
        for (const auto& [i, c] : v.entries())
            out.add_term(data.standard[i], c);
    }
    return out;
}

Element Cdga::multiply(const Element& x, const Element& y) const
{
    if (!contains(x) || !contains(y))
        throw AlgebraError("multiply: element does not belong to this algebra");
    Element out;
    out.owner_ = impl_->id;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            auto p = multiply(mx, my);
            if (p)
                out.add_term(p->monomial, cx * cy * p->sign);
        }
    return normal_form(out);
}

Element Cdga::power(const Element& x, unsigned k) const
{
    Element result = one();
    for (unsigned i = 0; i < k; ++i)
        result = multiply(result, x);
    return result;
}

Element Cdga::differential_of_monomial(const Monomial& m) const
{
    {
        std::lock_guard lock(impl_->d_mutex);
        auto it = impl_->d_cache.find(m);
        if (it != impl_->d_cache.end())
            return it->second;
    }
    // Leibniz over the word g_1 g_2 ... g_n (canonical order, repeats spelled out):
    // d(w) = sum_i (-1)^{|g_1...g_{i-1}|} g_1...g_{i-1} d(g_i) g_{i+1}...g_n
    std::vector<std::uint32_t> word;
    for (const auto& [g, e] : m.factors())
        for (std::uint32_t r = 0; r < e; ++r)
            word.push_back(g);
    Element out;
    out.owner_ = impl_->id;
    int prefix_degree = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const Element& dg = impl_->differential[word[i]];
        if (!dg.is_zero()) {
            auto prefix = normalize(std::span(word).subspan(0, i));
            auto suffix = normalize(std::span(word).subspan(i + 1));
            Element left = Element::monomial(prefix->monomial, prefix->sign);
            Element right = Element::monomial(suffix->monomial, suffix->sign);
            left.owner_ = right.owner_ = impl_->id;
            Element term = multiply(multiply(left, dg), right);
            out += sign_power(prefix_degree) * term;
        }
        prefix_degree += impl_->generators[word[i]].degree;
    }
    out = normal_form(out);
    std::lock_guard lock(impl_->d_mutex);
    impl_->d_cache.emplace(m, out);
    return out;
}

Element Cdga::differential(const Element& x) const
{
    if (!contains(x))
        throw AlgebraError("differential: element does not belong to this algebra");
    Element out;
    out.owner_ = impl_->id;
    for (const auto& [m, c] : x.terms()) {
        Element dm = differential_of_monomial(m);
        for (const auto& [mm, cc] : dm.terms())
            out.add_term(mm, c * cc);
    }
    return normal_form(out);
}

const std::vector<Monomial>& Cdga::graded_basis(int k) const
{
    return degree_data(k).basis;
}

SparseVec Cdga::to_vector(const Element& x, int k) const
{
    if (!contains(x))
        throw AlgebraError("to_vector: element does not belong to this algebra");
    const DegreeData& data = degree_data(k);
    Element nf = normal_form(x);
    std::vector<SparseVec::Entry> entries;
    for (const auto& [m, c] : nf.terms()) {
        auto it = data.basis_index.find(m);
        if (it == data.basis_index.end())
            throw AlgebraError("to_vector: element has a term outside degree " + std::to_string(k));
        entries.emplace_back(it->second, c);
    }
    return SparseVec(std::move(entries));
}

Element Cdga::from_vector(const SparseVec& v, int k) const
{
    const auto& basis = graded_basis(k);
    Element out;
    out.owner_ = impl_->id;
    for (const auto& [i, c] : v.entries())
        out.add_term(basis.at(i), c);
    return out;
}

LinearMap Cdga::differential_map(int k) const
{
    const auto& source = graded_basis(k);
    LinearMap map;
    map.source_dim = source.size();
    map.target_dim = dimension(k + 1);
    map.columns = rht::map_range(source.size(), [&](std::size_t i) {
        Element m = Element::monomial(source[i]);
        m.owner_ = impl_->id;
        return to_vector(differential(m), k + 1);
    });
    return map;
}

Cdga Cdga::extended(std::vector<Generator> extra, std::vector<Element> extra_d) const
{
    if (extra.size() != extra_d.size())
        throw AlgebraError("extended: need one differential per new generator");
    auto detach = [](Element x) {
        x.owner_ = 0;
        return x;
    };
    std::vector<Generator> gens = impl_->generators;
    std::vector<Element> d;
    for (const auto& x : impl_->differential)
        d.push_back(detach(x));
    for (std::size_t i = 0; i < extra.size(); ++i) {
        if (extra_d[i].owner() != 0 && extra_d[i].owner() != impl_->id)
            throw AlgebraError("extended: differential belongs to a different algebra");
        gens.push_back(std::move(extra[i]));
        d.push_back(detach(std::move(extra_d[i])));
    }
    std::vector<Element> rels;
    for (const auto& r : impl_->relations)
        rels.push_back(detach(r));
    return Cdga(std::move(gens), std::move(d), std::move(rels), impl_->top_degree);
}

// ---------------------------------------------------------------- DgaMorphism

DgaMorphism::DgaMorphism(Cdga source, Cdga target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target))
{
    if (images.size() != source_.generator_count())
        throw AlgebraError("morphism needs one image per source generator");
    images_.reserve(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        Element img = target_.adopt(images[i]);
        if (!img.is_zero()) {
            auto deg = target_.degree(img);
            if (!deg || *deg != source_.generator(i).degree)
                throw AlgebraError("morphism is not degree-preserving on generator " +
                                   source_.generator(i).name);
        }
        images_.push_back(std::move(img));
    }
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (apply(source_.d_of_generator(i)) != target_.differential(images_[i]))
            throw AlgebraError("morphism does not commute with d on generator " +
                               source_.generator(i).name);
    }
    for (const auto& r : source_.relations())
        if (!apply(r).is_zero())
            throw AlgebraError("morphism does not send a source relation to zero");
    if (auto top = source_.top_degree(); top && !(target_.top_degree() && *target_.top_degree() <= *top)) {
        for (int k = *top + 1; k <= *top + source_.max_generator_degree(); ++k)
            for (const auto& m : source_.free_monomials(k))
                if (!apply(m).is_zero())
                    throw AlgebraError("morphism does not vanish above the source top degree");
    }
}

DgaMorphism DgaMorphism::identity(const Cdga& a)
{
    std::vector<Element> images;
    for (std::size_t i = 0; i < a.generator_count(); ++i)
        images.push_back(Element::generator(static_cast<std::uint32_t>(i)));
    return DgaMorphism(a, a, std::move(images));
}

DgaMorphism DgaMorphism::zero(const Cdga& source, const Cdga& target)
{
    return DgaMorphism(source, target, std::vector<Element>(source.generator_count()));
}

Element DgaMorphism::apply(const Monomial& m) const
{
    Element result = target_.one();
    for (const auto& [g, e] : m.factors())
        result = target_.multiply(result, target_.power(images_.at(g), e));
    return result;
}

Element DgaMorphism::apply(const Element& x) const
{
    if (!source_.contains(x))
        throw AlgebraError("morphism applied to an element outside its source");
    Element out = target_.adopt(Element());
    for (const auto& [m, c] : x.terms())
        out += c * apply(m);
    return out;
}

LinearMap DgaMorphism::linear_map(int k) const
{
    const auto& basis = source_.graded_basis(k);
    LinearMap map;
    map.source_dim = basis.size();
    map.target_dim = target_.dimension(k);
    map.columns = rht::map_range(basis.size(), [&](std::size_t i) {
        return target_.to_vector(apply(basis[i]), k);
    });
    return map;
}

Element transfer(const Element& x, const Cdga& to)
{
    Element raw;
    for (const auto& [m, c] : x.terms())
        raw.add_term(m, c);
    return to.adopt(raw);
}

Element part_of_length(const Element& x, std::uint32_t length)
{
    Element out = x;
    out *= Rational(0);
    for (const auto& [m, c] : x.terms())
        if (m.length() == length)
            out.add_term(m, c);
    return out;
}

DgaMorphism compose(const DgaMorphism& psi, const DgaMorphism& phi)
{
    if (!(phi.target() == psi.source()))
        throw AlgebraError("compose: target of the first map is not the source of the second");
    std::vector<Element> images;
    for (const auto& img : phi.images())
        images.push_back(psi.apply(img));
    return DgaMorphism(phi.source(), psi.target(), std::move(images));
}

} // namespace rht
