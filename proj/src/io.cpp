#include "rht/io.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace rht {

namespace {

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class ExprParser {
public:
    ExprParser(const Cdga& a, const std::string& s) : a_(a), s_(s) {}

    Element parse()
    {
        Element e = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const Cdga& a_;
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("in \"" + s_ + "\" at column " + std::to_string(pos_ + 1) + ": " + what, 0);
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

    Element expr()
    {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Element e = term();
        if (neg)
            e = -e;
        for (;;) {
            if (accept('+'))
                e += term();
            else if (accept('-'))
                e -= term();
            else
                return e;
        }
    }

    Element term()
    {
        Element e = factor();
        while (accept('*'))
            e = a_.multiply(e, factor());
        return e;
    }

    Element factor()
    {
        Element e = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected an exponent");
            e = a_.power(e, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return e;
    }

    Element primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of expression");
        if (accept('(')) {
            Element e = expr();
            if (!accept(')'))
                fail("expected ')'");
            return e;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            try {
                return Rational(parse_rational(s_.substr(start, pos_ - start))) * a_.one();
            } catch (const std::exception&) {
                fail("bad number");
            }
        }
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && ident_char(s_[pos_]))
                ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (!a_.find(name))
                fail("unknown generator '" + name + "'");
            return a_.gen(name);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

Element detach(const Element& x)
{
    Element out;
    for (const auto& [m, c] : x.terms())
        out.add_term(m, c);
    return out;
}

std::vector<std::string> split_words(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> w;
    std::string t;
    while (in >> t)
        w.push_back(t);
    return w;
}

bool valid_name(const std::string& s)
{
    if (s.empty() || !ident_start(s[0]))
        return false;
    for (char c : s)
        if (!ident_char(c))
            return false;
    return true;
}

int parse_int(const std::string& s, int line, const char* what)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("expected an integer ") + what + ", got '" + s + "'", line);
}

} // namespace

Element parse_element(const Cdga& algebra, const std::string& text)
{
    return ExprParser(algebra, text).parse();
}

Presentation parse_presentation(const std::string& text)
{
    Presentation p;
    bool have_header = false;
    std::vector<Generator> gens;
    std::vector<int> gen_line;
    struct Pending {
        int line;
        std::string target;
        std::string expr;
    };
    std::vector<Pending> diffs;
    std::vector<Pending> rels;
    std::optional<int> fundamental;
    int fundamental_line = 0;
    bool duality = false;

    std::istringstream in(text);
    std::string raw_line;
    int line = 0;
    while (std::getline(in, raw_line)) {
        ++line;
        std::string l = raw_line.substr(0, raw_line.find('#'));
        auto words = split_words(l);
        if (words.empty())
            continue;
        const std::string& kw = words[0];
        if (!have_header) {
            if ((kw != "cdga" && kw != "ring") || words.size() != 2)
                throw ParseError("expected a header 'cdga NAME' or 'ring NAME'", line);
            p.kind = kw == "cdga" ? Presentation::Kind::Cdga : Presentation::Kind::Ring;
            p.name = words[1];
            have_header = true;
            continue;
        }
        if (kw == "gen") {
            if (words.size() != 3)
                throw ParseError("expected 'gen NAME DEGREE'", line);
            if (!valid_name(words[1]))
                throw ParseError("invalid generator name '" + words[1] + "'", line);
            for (const auto& g : gens)
                if (g.name == words[1])
                    throw ParseError("duplicate generator '" + words[1] + "'", line);
            const int deg = parse_int(words[2], line, "degree");
            if (deg < 1)
                throw ParseError("generator degree must be positive", line);
            gens.push_back({words[1], deg, std::nullopt});
            gen_line.push_back(line);
        } else if (kw == "d") {
            if (p.kind != Presentation::Kind::Cdga)
                throw ParseError("'d' lines are only allowed in a cdga", line);
            const auto eq = l.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected 'd NAME = EXPR'", line);
            auto lhs = split_words(l.substr(0, eq));
            if (lhs.size() != 2)
                throw ParseError("expected 'd NAME = EXPR'", line);
            diffs.push_back({line, lhs[1], l.substr(eq + 1)});
        } else if (kw == "rel") {
            if (p.kind != Presentation::Kind::Ring)
                throw ParseError("'rel' lines are only allowed in a ring", line);
            rels.push_back({line, "", l.substr(l.find("rel") + 3)});
        } else if (kw == "fundamental") {
            if (p.kind != Presentation::Kind::Ring || words.size() != 2)
                throw ParseError("expected 'fundamental N' in a ring", line);
            fundamental = parse_int(words[1], line, "degree");
            fundamental_line = line;
        } else if (kw == "duality") {
            if (p.kind != Presentation::Kind::Ring || words.size() != 1)
                throw ParseError("'duality' takes no arguments and needs a ring", line);
            duality = true;
        } else {
            throw ParseError("unknown keyword '" + kw + "'", line);
        }
    }
    if (!have_header)
        throw ParseError("empty presentation", 0);

    const Cdga free = Cdga::free(gens);
    auto parse_at = [&](const Pending& pd) {
        try {
            return parse_element(free, pd.expr);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), pd.line);
        } catch (const AlgebraError& e) {
            throw ParseError(e.what(), pd.line);
        }
    };

    if (p.kind == Presentation::Kind::Cdga) {
        std::vector<Element> d(gens.size());
        std::vector<int> d_line(gens.size(), 0);
        for (const auto& pd : diffs) {
            auto idx = free.find(pd.target);
            if (!idx)
                throw ParseError("d of unknown generator '" + pd.target + "'", pd.line);
            if (d_line[*idx])
                throw ParseError("second differential for '" + pd.target + "' (first on line " +
                                     std::to_string(d_line[*idx]) + ")",
                                 pd.line);
            Element e = parse_at(pd);
            if (!e.is_zero()) {
                auto deg = free.degree(e);
                if (!deg || *deg != gens[*idx].degree + 1)
                    throw ParseError("d " + pd.target + " must be homogeneous of degree " +
                                         std::to_string(gens[*idx].degree + 1),
                                     pd.line);
            }
            d[*idx] = detach(e);
            d_line[*idx] = pd.line;
        }
        try {
            p.algebra = Cdga(gens, std::move(d));
        } catch (const AlgebraError& e) {
            static const std::regex named("generator ([A-Za-z_][A-Za-z0-9_]*)");
            std::smatch m;
            const std::string msg = e.what();
            int where = 0;
            if (std::regex_search(msg, m, named))
                if (auto idx = free.find(m[1]))
                    where = d_line[*idx] ? d_line[*idx] : gen_line[*idx];
            throw ParseError(msg, where);
        }
        return p;
    }

    std::vector<Element> relations;
    for (const auto& pd : rels) {
        Element e = parse_at(pd);
        if (!e.is_zero() && !free.degree(e))
            throw ParseError("relation is not homogeneous", pd.line);
        relations.push_back(detach(e));
    }
    try {
        p.ring = make_ring(p.name, gens, std::move(relations), fundamental, duality);
    } catch (const AlgebraError& e) {
        throw ParseError(e.what(), duality ? fundamental_line : 0);
    }
    p.algebra = p.ring->ring;
    return p;
}

Presentation load_presentation(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path, 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
}

std::string format_monomial(const Cdga& algebra, const Monomial& m)
{
    if (m.is_one())
        return "1";
    std::string out;
    for (const auto& [g, e] : m.factors()) {
        if (!out.empty())
            out += "*";
        out += algebra.generator(g).name;
        if (e > 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

std::string format_element(const Cdga& algebra, const Element& x)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : x.terms()) {
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        std::string t;
        if (m.is_one())
            t = mag.get_str();
        else if (mag == 1)
            t = format_monomial(algebra, m);
        else
            t = mag.get_str() + "*" + format_monomial(algebra, m);
        if (out.empty())
            out = neg ? "-" + t : t;
        else
            out += (neg ? " - " : " + ") + t;
    }
    return out;
}

std::string format_presentation(const Presentation& p)
{
    const Cdga& a = p.kind == Presentation::Kind::Ring ? p.ring->ring : p.algebra;
    std::string out = (p.kind == Presentation::Kind::Ring ? "ring " : "cdga ") + p.name + "\n";
    for (const auto& g : a.generators())
        out += "gen " + g.name + " " + std::to_string(g.degree) + "\n";
    if (p.kind == Presentation::Kind::Cdga) {
        for (std::size_t i = 0; i < a.generator_count(); ++i)
            if (!a.d_of_generator(i).is_zero())
                out += "d " + a.generator(i).name + " = " + format_element(a, a.d_of_generator(i)) + "\n";
        return out;
    }
    for (const auto& r : a.relations())
        out += "rel " + format_element(a, r) + "\n";
    if (p.ring->fundamental)
        out += "fundamental " + std::to_string(*p.ring->fundamental) + "\n";
    if (p.ring->duality)
        out += "duality\n";
    return out;
}

namespace {

class BracketParser {
public:
    explicit BracketParser(const std::string& s) : s_(s) {}

    Bracket parse()
    {
        Bracket b = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing text");
        return b;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("bracket \"" + s_ + "\", column " + std::to_string(pos_ + 1) + ": " + what, 0);
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

    Bracket expr()
    {
        if (accept('[')) {
            Bracket l = expr();
            if (!accept(','))
                fail("expected ','");
            Bracket r = expr();
            if (!accept(']'))
                fail("expected ']'");
            return BracketExpr::node(l, r);
        }
        skip();
        Rational mult = 1;
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
            ++pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            try {
                mult = parse_rational(s_.substr(start, pos_ - start));
            } catch (const std::exception&) {
                fail("bad multiplier");
            }
            if (!accept('*'))
                fail("expected '*' after multiplier");
            skip();
            start = pos_;
        }
        if (pos_ >= s_.size() || !ident_start(s_[pos_]))
            fail("expected a generator name or '['");
        while (pos_ < s_.size() && ident_char(s_[pos_]))
            ++pos_;
        return BracketExpr::leaf(s_.substr(start, pos_ - start), mult);
    }
};

} // namespace

Bracket parse_bracket(const std::string& text)
{
    return BracketParser(text).parse();
}

} // namespace rht
