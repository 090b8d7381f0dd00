#include "rht/homotopy.hpp"

namespace rht {

namespace {

// Splits x into its homogeneous components.
std::map<int, Element> by_degree(const Cdga& a, const Element& x)
{
    std::map<int, Element> out;
    for (const auto& [m, c] : x.terms()) {
        auto [it, inserted] = out.try_emplace(a.degree(m), a.adopt(Element()));
        it->second.add_term(m, c);
    }
    return out;
}

void accumulate(std::map<int, Element>& part, int i, const Element& a)
{
    if (a.is_zero())
        return;
    auto it = part.find(i);
    if (it == part.end()) {
        part.emplace(i, a);
        return;
    }
    it->second += a;
    if (it->second.is_zero())
        part.erase(it);
}

} // namespace

HomotopyElement::HomotopyElement(Cdga algebra, int t_cap) : algebra_(std::move(algebra)), t_cap_(t_cap)
{
    if (t_cap < 1)
        throw std::invalid_argument("HomotopyElement: t-degree cap must be positive");
}

HomotopyElement HomotopyElement::constant(const Cdga& algebra, const Element& a, int t_cap)
{
    return term(algebra, a, 0, false, t_cap);
}

HomotopyElement HomotopyElement::term(const Cdga& algebra, const Element& a, int i, bool with_dt, int t_cap)
{
    HomotopyElement u(algebra, t_cap);
    if (with_dt)
        u.add_dt(i, a);
    else
        u.add_body(i, a);
    return u;
}

void HomotopyElement::add_body(int i, const Element& a)
{
    if (a.is_zero())
        return;
    if (i < 0 || i > t_cap_)
        throw TDegreeOverflow("t-degree " + std::to_string(i) + " exceeds the cap " + std::to_string(t_cap_));
    accumulate(body_, i, algebra_.adopt(a));
}

void HomotopyElement::add_dt(int i, const Element& a)
{
    if (a.is_zero())
        return;
    if (i < 0 || i > t_cap_)
        throw TDegreeOverflow("t-degree " + std::to_string(i) + " exceeds the cap " + std::to_string(t_cap_));
    accumulate(dt_, i, algebra_.adopt(a));
}

void HomotopyElement::check_same(const HomotopyElement& o) const
{
    if (!(algebra_ == o.algebra_))
        throw AlgebraError("homotopy elements over different algebras");
}

Element HomotopyElement::at(const Rational& t0) const
{
    Element out = algebra_.adopt(Element());
    for (const auto& [i, a] : body_)
        out += power(t0, i) * a;
    return out;
}

HomotopyElement HomotopyElement::differential() const
{
    HomotopyElement out(algebra_, t_cap_);
    for (const auto& [i, a] : body_) {
        out.add_body(i, algebra_.differential(a));
        if (i > 0)
            for (const auto& [deg, part] : by_degree(algebra_, a))
                out.add_dt(i - 1, Rational(sign_power(deg) * i) * part);
    }
    for (const auto& [i, a] : dt_)
        out.add_dt(i, algebra_.differential(a));
    return out;
}

HomotopyElement HomotopyElement::integrate_0_t() const
{
    HomotopyElement out(algebra_, t_cap_);
    for (const auto& [i, a] : dt_)
        for (const auto& [deg, part] : by_degree(algebra_, a))
            out.add_body(i + 1, Rational(sign_power(deg), i + 1) * part);
    return out;
}

Element HomotopyElement::integrate_0_1() const
{
    Element out = algebra_.adopt(Element());
    for (const auto& [i, a] : dt_)
        for (const auto& [deg, part] : by_degree(algebra_, a))
            out += Rational(sign_power(deg), i + 1) * part;
    return out;
}

HomotopyElement HomotopyElement::reversed() const
{
    // (1 - t)^i = sum_j C(i, j) (-1)^j t^j
    HomotopyElement out(algebra_, t_cap_);
    for (const auto& [i, a] : body_)
        for (int j = 0; j <= i; ++j)
            out.add_body(j, Rational(static_cast<long>(binomial(i, j)) * sign_power(j)) * a);
    for (const auto& [i, a] : dt_)
        for (int j = 0; j <= i; ++j)
            out.add_dt(j, Rational(-static_cast<long>(binomial(i, j)) * sign_power(j)) * a);
    return out;
}

HomotopyElement& HomotopyElement::operator+=(const HomotopyElement& o)
{
    check_same(o);
    for (const auto& [i, a] : o.body_)
        add_body(i, a);
    for (const auto& [i, a] : o.dt_)
        add_dt(i, a);
    return *this;
}

HomotopyElement& HomotopyElement::operator-=(const HomotopyElement& o)
{
    check_same(o);
    for (const auto& [i, a] : o.body_)
        add_body(i, -a);
    for (const auto& [i, a] : o.dt_)
        add_dt(i, -a);
    return *this;
}

HomotopyElement& HomotopyElement::operator*=(const Rational& c)
{
    if (c == 0) {
        body_.clear();
        dt_.clear();
        return *this;
    }
    for (auto& [i, a] : body_)
        a *= c;
    for (auto& [i, a] : dt_)
        a *= c;
    return *this;
}

bool operator==(const HomotopyElement& a, const HomotopyElement& b)
{
    return a.algebra_ == b.algebra_ && a.body_ == b.body_ && a.dt_ == b.dt_;
}

HomotopyElement HomotopyElement::multiply(const HomotopyElement& o) const
{
    check_same(o);
    HomotopyElement out(algebra_, std::max(t_cap_, o.t_cap_));
    for (const auto& [i, x] : body_) {
        for (const auto& [j, y] : o.body_)
            out.add_body(i + j, algebra_.multiply(x, y));
        for (const auto& [j, y] : o.dt_)
            out.add_dt(i + j, algebra_.multiply(x, y));
    }
    for (const auto& [i, x] : dt_)
        for (const auto& [j, y] : o.body_)
            for (const auto& [deg, part] : by_degree(algebra_, y))
                out.add_dt(i + j, Rational(sign_power(deg)) * algebra_.multiply(x, part));
    return out;
}

// ---------------------------------------------------------------- DgaHomotopy

DgaHomotopy::DgaHomotopy(Cdga source, Cdga target, std::vector<HomotopyElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_.generator_count())
        throw AlgebraError("homotopy needs one image per source generator");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        const HomotopyElement& u = images_[i];
        const Generator& g = source_.generator(i);
        if (!(u.algebra() == target_))
            throw AlgebraError("homotopy image of " + g.name + " lives in the wrong algebra");
        for (const auto& [k, a] : u.body())
            if (target_.degree(a) != g.degree)
                throw AlgebraError("homotopy is not degree-preserving on " + g.name);
        for (const auto& [k, a] : u.dt_part())
            if (target_.degree(a) != g.degree - 1)
                throw AlgebraError("homotopy is not degree-preserving on " + g.name + " (dt part)");
    }
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (!(apply(source_.d_of_generator(i)) == images_[i].differential()))
            throw AlgebraError("homotopy does not commute with d on generator " + source_.generator(i).name);
}

DgaHomotopy DgaHomotopy::constant(const DgaMorphism& f, int t_cap)
{
    std::vector<HomotopyElement> images;
    for (const auto& img : f.images())
        images.push_back(HomotopyElement::constant(f.target(), img, t_cap));
    return DgaHomotopy(f.source(), f.target(), std::move(images));
}

HomotopyElement DgaHomotopy::apply(const Element& x) const
{
    if (!source_.contains(x))
        throw AlgebraError("homotopy applied to an element outside its source");
    const int cap = images_.empty() ? default_t_cap : images_.front().t_cap();
    HomotopyElement out(target_, cap);
    for (const auto& [m, c] : x.terms()) {
        HomotopyElement prod = HomotopyElement::constant(target_, target_.one(), cap);
        for (const auto& [g, e] : m.factors())
            for (std::uint32_t r = 0; r < e; ++r)
                prod = prod.multiply(images_.at(g));
        prod *= c;
        out += prod;
    }
    return out;
}

DgaMorphism DgaHomotopy::at_start() const
{
    std::vector<Element> images;
    for (const auto& u : images_)
        images.push_back(u.at(0));
    return DgaMorphism(source_, target_, images);
}

DgaMorphism DgaHomotopy::at_end() const
{
    std::vector<Element> images;
    for (const auto& u : images_)
        images.push_back(u.at(1));
    return DgaMorphism(source_, target_, images);
}

DgaHomotopy DgaHomotopy::reversed() const
{
    std::vector<HomotopyElement> images;
    for (const auto& u : images_)
        images.push_back(u.reversed());
    return DgaHomotopy(source_, target_, std::move(images));
}

// ---------------------------------------------------------------- obstruction theory

namespace {

struct Diagram {
    std::size_t base_count = 0;
    int degree = 0;
    std::vector<std::uint32_t> generators;
};

bool same_images(const DgaMorphism& a, const DgaMorphism& b, std::size_t count)
{
    for (std::size_t i = 0; i < count; ++i)
        if (!(a.image(i) == transfer(b.image(i), a.target())))
            return false;
    return true;
}

Diagram validate(const ExtensionProblem& p)
{
    const Cdga& a = p.f.source();
    const Cdga& b = p.f.target();
    const Cdga& c = p.h.target();
    const Cdga& e = p.g.source();
    if (!(p.h.source() == b))
        throw AlgebraError("diagram mismatch: h must start at the target of f");
    if (!(p.g.target() == c))
        throw AlgebraError("diagram mismatch: g and h must have the same target");
    if (!(p.homotopy.source() == a) || !(p.homotopy.target() == c))
        throw AlgebraError("diagram mismatch: the homotopy must go from A to C (x) Q<t,dt>");
    if (e.generator_count() <= a.generator_count())
        throw AlgebraError("diagram mismatch: the extension adds no generators");
    Diagram d;
    d.base_count = a.generator_count();
    for (std::size_t i = 0; i < d.base_count; ++i) {
        if (!(e.generator(i) == a.generator(i)))
            throw AlgebraError("diagram mismatch: extension does not start with the generators of A");
        if (!(transfer(e.d_of_generator(i), a) == a.d_of_generator(i)))
            throw AlgebraError("diagram mismatch: extension changes d on " + a.generator(i).name);
    }
    d.degree = e.generator(d.base_count).degree;
    for (std::size_t i = d.base_count; i < e.generator_count(); ++i) {
        if (e.generator(i).degree != d.degree)
            throw AlgebraError("diagram mismatch: extension generators must share one degree");
        for (const auto& [m, coeff] : e.d_of_generator(i).terms())
            for (const auto& f : m.factors())
                if (f.first >= d.base_count)
                    throw AlgebraError("diagram mismatch: d of " + e.generator(i).name + " leaves A");
        d.generators.push_back(static_cast<std::uint32_t>(i));
    }
    DgaMorphism start = p.homotopy.at_start();
    DgaMorphism end = p.homotopy.at_end();
    for (std::size_t i = 0; i < d.base_count; ++i)
        if (!(start.image(i) == p.g.image(i)))
            throw AlgebraError("diagram mismatch: H at t=0 differs from g on " + a.generator(i).name);
    DgaMorphism hf = compose(p.h, p.f);
    if (!same_images(end, hf, d.base_count))
        throw AlgebraError("diagram mismatch: H at t=1 differs from h f");
    return d;
}

} // namespace

ObstructionClass obstruction_class(const ExtensionProblem& p)
{
    Diagram dia = validate(p);
    const Cdga& a = p.f.source();
    const Cdga& e = p.g.source();
    RelativeCohomology rel(p.h, dia.degree + 1);

    ObstructionClass out;
    out.degree = dia.degree;
    out.generators = dia.generators;
    out.relative_rank = rel.rank();
    IncrementalEchelon span(rel.rank());
    std::vector<std::pair<Element, Element>> primitive;
    bool all_exact = true;
    for (std::uint32_t v : dia.generators) {
        Element dv = transfer(e.d_of_generator(v), a);
        Element first = p.f.apply(dv);
        Element second = p.g.image(v) + p.homotopy.apply(dv).integrate_0_1();
        auto cls = rel.class_of(first, second);
        if (!cls)
            throw std::logic_error("obstruction cocycle is not a relative cocycle");
        span.add(*cls);
        out.cocycle.emplace_back(first, second);
        out.classes.push_back(*cls);
        if (!cls->empty())
            all_exact = false;
        else
            primitive.push_back(*rel.primitive(first, second));
    }
    out.class_rank = span.rank();
    out.vanishes = all_exact;
    if (all_exact)
        out.primitive = std::move(primitive);
    return out;
}

Extension extend_with_witness(const ExtensionProblem& p,
                              const std::vector<std::pair<Element, Element>>& primitive)
{
    Diagram dia = validate(p);
    const Cdga& a = p.f.source();
    const Cdga& b = p.f.target();
    const Cdga& c = p.h.target();
    const Cdga& e = p.g.source();
    if (primitive.size() != dia.generators.size())
        throw AlgebraError("primitive must give (b, c) for every extension generator");
    const int cap = p.homotopy.images().empty() ? default_t_cap : p.homotopy.images().front().t_cap();

    std::vector<Element> f_images = p.f.images();
    std::vector<HomotopyElement> h_images = p.homotopy.images();
    for (std::size_t k = 0; k < dia.generators.size(); ++k) {
        const std::uint32_t v = dia.generators[k];
        const std::string& name = e.generator(v).name;
        Element bv = b.adopt(primitive[k].first);
        Element cv = c.adopt(primitive[k].second);
        Element dv = transfer(e.d_of_generator(v), a);
        if (!(b.differential(bv) == p.f.apply(dv)))
            throw AlgebraError("invalid primitive for " + name + ": db != f(dv)");
        HomotopyElement hdv = p.homotopy.apply(dv);
        Element rhs = p.g.image(v) + hdv.integrate_0_1();
        if (!(p.h.apply(bv) - c.differential(cv) == rhs))
            throw AlgebraError("invalid primitive for " + name + ": dc mismatch");
        f_images.push_back(bv);
        HomotopyElement ht = HomotopyElement::constant(c, p.g.image(v), cap);
        ht += HomotopyElement::term(c, cv, 1, false, cap).differential();
        ht += hdv.integrate_0_t();
        h_images.push_back(ht);
    }
    DgaMorphism f_tilde(e, b, f_images);
    DgaHomotopy h_tilde(e, c, h_images);
    return Extension{f_tilde, h_tilde};
}

std::optional<std::string> extension_defect(const ExtensionProblem& p, const Extension& ext)
{
    const Cdga& e = p.g.source();
    if (!(ext.homotopy.source() == e) || !(ext.f.source() == e))
        return "extension is not defined on A<V>";
    DgaMorphism start = ext.homotopy.at_start();
    DgaMorphism end = ext.homotopy.at_end();
    DgaMorphism hf = compose(p.h, ext.f);
    for (std::size_t i = 0; i < e.generator_count(); ++i) {
        if (!(start.image(i) == p.g.image(i)))
            return "H~ at t=0 differs from g on " + e.generator(i).name;
        if (!(end.image(i) == hf.image(i)))
            return "H~ at t=1 differs from h f~ on " + e.generator(i).name;
    }
    for (std::size_t i = 0; i < p.f.source().generator_count(); ++i)
        if (!(ext.f.image(i) == p.f.image(i)))
            return "f~ does not extend f on " + e.generator(i).name;
    for (std::size_t i = 0; i < e.generator_count(); ++i)
        if (!(ext.homotopy.apply(e.d_of_generator(i)) == ext.homotopy.images()[i].differential()))
            return "H~ does not commute with d on " + e.generator(i).name;
    return std::nullopt;
}

} // namespace rht
