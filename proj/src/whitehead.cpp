#include "rht/whitehead.hpp"

namespace rht {

Bracket BracketExpr::leaf(std::string name, Rational multiplier)
{
    auto e = std::make_shared<BracketExpr>();
    e->name = std::move(name);
    e->multiplier = std::move(multiplier);
    return e;
}

Bracket BracketExpr::node(Bracket l, Bracket r)
{
    if (!l || !r)
        throw std::invalid_argument("bracket node needs two children");
    auto e = std::make_shared<BracketExpr>();
    e->left = std::move(l);
    e->right = std::move(r);
    return e;
}

std::string to_string(const BracketExpr& e)
{
    if (e.is_leaf())
        return e.multiplier == 1 ? e.name : e.multiplier.get_str() + "*" + e.name;
    return "[" + to_string(*e.left) + "," + to_string(*e.right) + "]";
}

int bracket_degree(const Cdga& model, const BracketExpr& e)
{
    if (e.is_leaf())
        return model.generator(model.index_of(e.name)).degree;
    return bracket_degree(model, *e.left) + bracket_degree(model, *e.right) - 1;
}

Bracket scale_by_degree(const Cdga& model, const Bracket& e, const Rational& n)
{
    if (e->is_leaf())
        return BracketExpr::leaf(e->name, e->multiplier * power(n, model.generator(model.index_of(e->name)).degree));
    return BracketExpr::node(scale_by_degree(model, e->left, n), scale_by_degree(model, e->right, n));
}

namespace {

Rational pair(const Cdga& model, std::uint32_t x, const BracketExpr& e)
{
    if (e.is_leaf())
        return model.index_of(e.name) == x ? e.multiplier : Rational(0);
    if (model.generator(x).degree != bracket_degree(model, e))
        return 0;
    Rational total = 0;
    for (const auto& [m, c] : model.d_of_generator(x).terms()) {
        if (m.length() != 2)
            continue;
        const auto& f = m.factors();
        const std::uint32_t u = f.front().first;
        const std::uint32_t w = f.size() == 1 ? u : f.back().first;
        const int sign = sign_power(static_cast<long>(model.generator(u).degree) * model.generator(w).degree);
        total += c * (pair(model, u, *e.left) * pair(model, w, *e.right) +
                      sign * pair(model, w, *e.left) * pair(model, u, *e.right));
    }
    return total;
}

} // namespace

Rational whitehead_pair(const Cdga& model, const std::string& v, const BracketExpr& e)
{
    const std::uint32_t x = model.index_of(v);
    const int dv = model.generator(x).degree;
    const int de = bracket_degree(model, e);
    if (dv != de)
        throw AlgebraError("degree mismatch: " + v + " has degree " + std::to_string(dv) + " but " +
                           to_string(e) + " pairs with degree " + std::to_string(de));
    return pair(model, x, e);
}

Rational hopf_invariant(const Cdga& ring, const Element& w, const Element& b)
{
    auto dw = ring.degree(w);
    auto db = ring.degree(b);
    if (!dw || !db)
        throw AlgebraError("hopf_invariant: w and b must be nonzero and homogeneous");
    if (*db != 2 * *dw)
        throw AlgebraError("hopf_invariant: deg b must be twice deg w");
    if (ring.dimension(*db) != 1)
        throw AlgebraError("hopf_invariant: degree " + std::to_string(*db) + " is not one-dimensional");
    SparseVec sq = ring.to_vector(ring.multiply(w, w), *db);
    SparseVec top = ring.to_vector(b, *db);
    if (top.empty())
        throw AlgebraError("hopf_invariant: b is zero in the ring");
    if (sq.empty())
        return 0;
    Rational h = sq.leading_value() / top.leading_value();
    SparseVec check = top;
    check.scale(h);
    if (!(check == sq))
        throw AlgebraError("hopf_invariant: w^2 is not proportional to b");
    return h;
}

} // namespace rht
