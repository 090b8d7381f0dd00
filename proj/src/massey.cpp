#include "rht/massey.hpp"

namespace rht {

namespace {

Element checked(const Cdga& a, const CohomologyClass& c, const char* label)
{
    Element x = a.adopt(c.representative);
    if (!x.is_zero() && a.degree(x) != c.degree)
        throw AlgebraError(std::string("massey_triple: ") + label + " is not homogeneous of degree " +
                           std::to_string(c.degree));
    if (!a.differential(x).is_zero())
        throw AlgebraError(std::string("massey_triple: ") + label + " is not a cocycle");
    return x;
}

} // namespace

MasseyResult massey_triple(const Cdga& a, const CohomologyClass& cx, const CohomologyClass& cy,
                           const CohomologyClass& cz)
{
    const Element x = checked(a, cx, "x");
    const Element y = checked(a, cy, "y");
    const Element z = checked(a, cz, "z");
    const int dxy = cx.degree + cy.degree;
    const int dyz = cy.degree + cz.degree;

    MasseyResult r;
    r.degree = dxy + cz.degree - 1;

    auto xi = DegreeCohomology(a, dxy).primitive(a.multiply(x, y));
    if (!xi)
        throw MasseyError("massey_triple: [x][y] is nonzero in H^" + std::to_string(dxy));
    auto eta = DegreeCohomology(a, dyz).primitive(a.multiply(y, z));
    if (!eta)
        throw MasseyError("massey_triple: [y][z] is nonzero in H^" + std::to_string(dyz));
    r.xi = *xi;
    r.eta = *eta;
    r.representative = a.multiply(r.xi, z) - Rational(sign_power(cx.degree)) * a.multiply(x, r.eta);

    DegreeCohomology h(a, r.degree);
    r.cohomology_rank = h.rank();
    auto cls = [&](const Element& e, const char* what) {
        auto v = h.class_of(e);
        if (!v)
            throw AlgebraError(std::string("massey_triple: ") + what + " is not a cocycle (Leibniz rule broken?)");
        return *v;
    };
    r.coordinates = cls(r.representative, "the defining representative");

    std::vector<SparseVec> rows;
    for (const auto& c : DegreeCohomology(a, dyz - 1).classes())
        rows.push_back(cls(a.multiply(x, c.representative), "an indeterminacy product"));
    for (const auto& c : DegreeCohomology(a, dxy - 1).classes())
        rows.push_back(cls(a.multiply(c.representative, z), "an indeterminacy product"));
    r.indeterminacy = rht::rref(std::move(rows), h.rank());
    r.vanishes = reduce(r.indeterminacy, r.coordinates).empty();
    return r;
}

} // namespace rht
