#include "rht/classify.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>

namespace rht {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Space parse()
    {
        Space sp = space();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing text");
        return sp;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw DescriptorError("descriptor \"" + s_ + "\", column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    std::string word()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a name or number");
        return s_.substr(start, pos_ - start);
    }

    bool peek_call(const std::string& w)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == '(' && (w == "csum" || w == "prod" || w == "wedge" || w == "skel");
    }

    Atom atom(const std::string& w)
    {
        static const std::regex sphere("S([0-9]+)");
        static const std::regex prod("S([0-9]+)xS([0-9]+)");
        static const std::regex proj("(CP|HP|OP)([0-9]+)");
        std::smatch m;
        try {
            if (std::regex_match(w, m, sphere))
                return Atom::sphere(std::stoi(m[1]));
            if (std::regex_match(w, m, prod))
                return Atom::product(std::stoi(m[1]), std::stoi(m[2]));
            if (std::regex_match(w, m, proj)) {
                const int step = m[1] == "CP" ? 2 : m[1] == "HP" ? 4 : 8;
                const int k = std::stoi(m[2]);
                if (k == 1)
                    return Atom::sphere(step);
                return Atom::projective(step, k);
            }
        } catch (const AlgebraError& e) {
            fail(e.what());
        } catch (const std::out_of_range&) {
            fail("number out of range in " + w);
        }
        fail("unknown space \"" + w + "\"");
    }

    Atom summand()
    {
        if (accept('(')) {
            Atom a = summand();
            expect(')');
            return a;
        }
        std::string w = word();
        if (w == "rev") {
            expect('(');
            Atom a = summand();
            expect(')');
            a.reversed = !a.reversed;
            return a;
        }
        return atom(w);
    }

    Space space()
    {
        if (accept('(')) {
            Space sp = space();
            expect(')');
            return sp;
        }
        const std::string w = word();
        Space sp;
        if (!peek_call(w)) {
            sp.kind = Space::Kind::Atom;
            sp.atom = atom(w);
            return sp;
        }
        expect('(');
        if (w == "csum") {
            sp.kind = Space::Kind::ConnectedSum;
            do {
                skip();
                long count = 1;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    const std::string num = word();
                    count = std::stol(num);
                    if (count < 1)
                        fail("multiplicity must be positive");
                    expect('*');
                }
                sp.summands.emplace_back(count, summand());
            } while (accept(','));
        } else if (w == "skel") {
            sp.kind = Space::Kind::Skeleton;
            const std::string num = word();
            if (!std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                fail("skel needs a dimension first");
            sp.skeleton = std::stoi(num);
            expect(',');
            sp.parts.push_back(space());
        } else {
            sp.kind = w == "prod" ? Space::Kind::Product : Space::Kind::Wedge;
            do
                sp.parts.push_back(space());
            while (accept(','));
        }
        expect(')');
        return sp;
    }
};

std::vector<Atom> expand(const Space& s)
{
    std::vector<Atom> out;
    for (const auto& [count, a] : s.summands)
        for (long i = 0; i < count; ++i)
            out.push_back(a);
    return out;
}

Classification atom_classification(const Atom& a)
{
    Classification c;
    c.descriptor = a.name();
    int dim = 0;
    Element image;
    RingPresentation ring = atom_ring(a);
    if (a.kind == Atom::Kind::Sphere) {
        dim = a.n;
        ExteriorAlgebra ext(dim);
        image = ext.volume();
        c.witness = EmbeddingWitness{ext, {image}, {}};
    } else {
        dim = a.fundamental();
        ExteriorAlgebra ext(dim);
        image = ext.algebra().power(ext.symplectic_form(), static_cast<unsigned>(a.n / 2));
        c.witness = EmbeddingWitness{ext, {image}, {}};
    }
    WitnessCheck chk = verify_witness(ring, *c.witness);
    c.witness_verified = chk.ok;
    c.rank_bound = rank_bound_check(a.betti(), a.fundamental());
    c.ring = std::move(ring);
    c.verdict = chk.ok ? Verdict::Scalable : Verdict::Unknown;
    c.certificate.kind = "witness";
    c.certificate.fields = {{"target", "Lambda R^" + std::to_string(dim)},
                            {"image", a.kind == Atom::Kind::Sphere ? "volume form"
                                                                   : "omega^" + std::to_string(a.n / 2)}};
    c.certificate.summary = "symmetric space; its generator maps to a form with nonzero top power";
    return c;
}

Classification from_decision(Decision d, const std::string& descriptor)
{
    Classification c;
    c.descriptor = descriptor;
    c.verdict = d.embeddable ? Verdict::Scalable : Verdict::NotScalable;
    c.certificate = std::move(d.certificate);
    c.ring = std::move(d.ring);
    c.witness = std::move(d.witness);
    c.witness_verified = d.witness_verified;
    return c;
}

Classification classify_sum(const Space& s)
{
    const std::string desc = to_string(s);
    std::vector<Atom> all = expand(s);
    const int top = all.front().fundamental();
    for (const auto& a : all)
        if (a.fundamental() != top)
            throw DescriptorError("connected sum " + desc + " mixes dimensions " + std::to_string(top) + " and " +
                                  std::to_string(a.fundamental()));
    std::vector<Atom> kept;
    for (const auto& a : all)
        if (a.kind != Atom::Kind::Sphere)
            kept.push_back(a);
    if (kept.empty()) {
        Classification c = atom_classification(Atom::sphere(top));
        c.descriptor = desc;
        return c;
    }

    RankBoundReport rb = rank_bound_check(connected_sum_betti(kept), top);
    auto finish = [&](Classification c) {
        c.descriptor = desc;
        c.rank_bound = rb;
        return c;
    };
    if (!rb.pass()) {
        const auto f = *rb.first_failure();
        Classification c;
        c.verdict = Verdict::NotScalable;
        c.certificate.kind = "rank-bound";
        c.certificate.fields = {{"degree", std::to_string(f.degree)},
                                {"rank", std::to_string(f.rank)},
                                {"bound", std::to_string(f.bound)},
                                {"manifold_dimension", std::to_string(top)}};
        c.certificate.summary = "rank of H^" + std::to_string(f.degree) + " is " + std::to_string(f.rank) +
                                " > C(" + std::to_string(top) + "," + std::to_string(f.degree) +
                                ") = " + std::to_string(f.bound);
        return finish(std::move(c));
    }
    if (kept.size() == 1 && kept.front().kind == Atom::Kind::Projective)
        return finish(atom_classification(kept.front()));

    const Atom& first = kept.front();
    bool same = true;
    for (const auto& a : kept) {
        if (a.kind != first.kind)
            same = false;
        else if (a.kind == Atom::Kind::Projective && (a.n != first.n || a.k != first.k))
            same = false;
        else if (a.kind == Atom::Kind::Product &&
                 (std::min(a.n, a.m) != std::min(first.n, first.m) || std::max(a.n, a.m) != std::max(first.n, first.m)))
            same = false;
    }
    Classification gap;
    gap.verdict = Verdict::Unknown;
    gap.certificate.kind = "gap";
    if (!same) {
        gap.certificate.summary = "mixed connected sum: no criterion decides it";
        return finish(std::move(gap));
    }
    const long r = static_cast<long>(kept.size());
    if (first.kind == Atom::Kind::Projective) {
        if (first.k == 2) {
            long p = 0, q = 0;
            for (const auto& a : kept)
                (a.reversed ? q : p) += 1;
            return finish(from_decision(decide_sigma(first.n, p, q), desc));
        }
        if (first.n == 2) {
            PiDecision pi = decide_pi(first.k, r);
            Classification c;
            c.verdict = pi.not_embeddable ? Verdict::NotScalable : Verdict::Unknown;
            c.certificate = pi.certificate;
            return finish(std::move(c));
        }
        gap.certificate.summary = "sums of " + first.name() + " are not covered";
        return finish(std::move(gap));
    }
    const int n = std::min(first.n, first.m);
    const int m = std::max(first.n, first.m);
    const auto bound = binomial(static_cast<unsigned>(n + m - 1), static_cast<unsigned>(n - 1));
    if (n == m)
        return finish(from_decision(decide_omega(n, r), desc));
    if (static_cast<unsigned long long>(r) <= bound) {
        SetFamily f{n + m - 1, {}};
        std::vector<std::vector<int>> members;
        std::vector<int> cur{0};
        std::function<void(int)> rec = [&](int from) {
            if (static_cast<int>(members.size()) >= r)
                return;
            if (static_cast<int>(cur.size()) == n) {
                members.push_back(cur);
                return;
            }
            for (int i = from; i < n + m; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(1);
        f.members = members;
        FamilyWitness fw = family_local_forms(f);
        Classification c;
        c.verdict = fw.check.ok ? Verdict::Scalable : Verdict::Unknown;
        c.certificate.kind = "witness";
        c.certificate.fields = {{"target", "Lambda R^" + std::to_string(n + m)},
                                {"family_size", std::to_string(r)},
                                {"bound", std::to_string(bound)}};
        c.certificate.summary = "forms dx_I for an intersection-complete family of " + std::to_string(n) +
                                "-subsets containing 0";
        c.ring = std::move(fw.ring);
        c.witness = std::move(fw.witness);
        c.witness_verified = fw.check.ok;
        return finish(std::move(c));
    }
    gap.certificate.fields = {{"r", std::to_string(r)},
                              {"scalable_up_to", std::to_string(bound)},
                              {"rank_bound", std::to_string(binomial(n + m, n))}};
    gap.certificate.summary = "r lies between the construction and the rank bound";
    return finish(std::move(gap));
}

} // namespace

Space parse_space(const std::string& text)
{
    return Parser(text).parse();
}

std::string to_string(const Space& s)
{
    switch (s.kind) {
    case Space::Kind::Atom: return s.atom.name();
    case Space::Kind::ConnectedSum: {
        std::string out = "csum(";
        for (std::size_t i = 0; i < s.summands.size(); ++i) {
            const auto& a = s.summands[i].second;
            std::string nm = a.kind == Atom::Kind::Product && !a.reversed ? "(" + a.name() + ")" : a.name();
            out += (i ? "," : "") + std::to_string(s.summands[i].first) + "*" + nm;
        }
        return out + ")";
    }
    case Space::Kind::Skeleton: return "skel(" + std::to_string(s.skeleton) + "," + to_string(s.parts.front()) + ")";
    case Space::Kind::Product:
    case Space::Kind::Wedge: {
        std::string out = s.kind == Space::Kind::Product ? "prod(" : "wedge(";
        for (std::size_t i = 0; i < s.parts.size(); ++i)
            out += (i ? "," : "") + to_string(s.parts[i]);
        return out + ")";
    }
    }
    return {};
}

std::optional<std::vector<std::size_t>> manifold_betti(const Space& s)
{
    switch (s.kind) {
    case Space::Kind::Atom: return s.atom.betti();
    case Space::Kind::ConnectedSum: {
        auto all = expand(s);
        return connected_sum_betti(all);
    }
    case Space::Kind::Product: {
        std::vector<std::size_t> b{1};
        for (const auto& p : s.parts) {
            auto pb = manifold_betti(p);
            if (!pb)
                return std::nullopt;
            std::vector<std::size_t> out(b.size() + pb->size() - 1, 0);
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = 0; j < pb->size(); ++j)
                    out[i + j] += b[i] * (*pb)[j];
            b = std::move(out);
        }
        return b;
    }
    default: return std::nullopt;
    }
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Scalable: return "Scalable";
    case Verdict::NotScalable: return "NotScalable";
    case Verdict::Unknown: return "Unknown";
    }
    return {};
}

Classification classify(const Space& s)
{
    try {
        switch (s.kind) {
        case Space::Kind::Atom:
            if (s.atom.kind == Atom::Kind::Product) {
                Space sum;
                sum.kind = Space::Kind::ConnectedSum;
                sum.summands = {{1, s.atom}};
                Classification c = classify_sum(sum);
                c.descriptor = s.atom.name();
                return c;
            }
            return atom_classification(s.atom);
        case Space::Kind::ConnectedSum: return classify_sum(s);
        case Space::Kind::Skeleton: {
            Classification c;
            c.descriptor = to_string(s);
            c.parts.push_back(classify(s.parts.front()));
            c.certificate.kind = "closure";
            if (c.parts.front().verdict == Verdict::Scalable && s.skeleton >= 2) {
                c.verdict = Verdict::Scalable;
                c.certificate.summary = "skeleta of scalable complexes are scalable";
            } else {
                c.verdict = Verdict::Unknown;
                c.certificate.summary = "no closure rule applies";
            }
            return c;
        }
        case Space::Kind::Product:
        case Space::Kind::Wedge: {
            Classification c;
            c.descriptor = to_string(s);
            bool all = true;
            for (const auto& p : s.parts) {
                c.parts.push_back(classify(p));
                all = all && c.parts.back().verdict == Verdict::Scalable;
            }
            c.certificate.kind = "closure";
            if (s.kind == Space::Kind::Product) {
                if (auto b = manifold_betti(s)) {
                    int dim = static_cast<int>(b->size()) - 1;
                    c.rank_bound = rank_bound_check(*b, dim);
                    if (!c.rank_bound->pass()) {
                        const auto f = *c.rank_bound->first_failure();
                        c.verdict = Verdict::NotScalable;
                        c.certificate.kind = "rank-bound";
                        c.certificate.fields = {{"degree", std::to_string(f.degree)},
                                                {"rank", std::to_string(f.rank)},
                                                {"bound", std::to_string(f.bound)},
                                                {"manifold_dimension", std::to_string(dim)}};
                        c.certificate.summary = "product fails the rank bound in degree " + std::to_string(f.degree);
                        return c;
                    }
                }
            }
            if (all) {
                c.verdict = Verdict::Scalable;
                c.certificate.summary = std::string(s.kind == Space::Kind::Product ? "products" : "wedge sums") +
                                        " of scalable spaces are scalable";
            } else {
                c.verdict = Verdict::Unknown;
                c.certificate.summary = "some factor is not known to be scalable";
            }
            return c;
        }
        }
    } catch (const AlgebraError& e) {
        throw DescriptorError(e.what());
    }
    return {};
}

Classification classify(const std::string& descriptor)
{
    return classify(parse_space(descriptor));
}

} // namespace rht
