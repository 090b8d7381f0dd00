#pragma once

// Whitehead products paired against minimal-model generators through the
// quadratic part of the differential, and Hopf invariants of two-cell rings.

#include "rht/cdga.hpp"

#include <memory>
#include <string>

namespace rht {

/// Iterated bracket: a leaf N*g or a node [left, right].
struct BracketExpr {
    std::string name; // leaf generator, empty for a node
    Rational multiplier = 1;
    std::shared_ptr<const BracketExpr> left;
    std::shared_ptr<const BracketExpr> right;

    [[nodiscard]] bool is_leaf() const { return !left; }
    static std::shared_ptr<const BracketExpr> leaf(std::string name, Rational multiplier = 1);
    static std::shared_ptr<const BracketExpr> node(std::shared_ptr<const BracketExpr> l,
                                                   std::shared_ptr<const BracketExpr> r);
};
using Bracket = std::shared_ptr<const BracketExpr>;

std::string to_string(const BracketExpr& e);

/// Degree of the dual generator: a leaf has the degree of its generator,
/// [L, R] has deg L + deg R - 1. Throws on unknown leaves.
int bracket_degree(const Cdga& model, const BracketExpr& e);

/// Multiplies each leaf g by N^{deg g}.
Bracket scale_by_degree(const Cdga& model, const Bracket& e, const Rational& n);

/// <v, e>. A quadratic monomial c x y of dv contributes
///   c (<x, L><y, R> + (-1)^{|x||y|} <y, L><x, R>)
/// to <v, [L, R]>; <x, N g> = N when x = g and 0 otherwise. Throws when the
/// degree of v differs from bracket_degree(e).
Rational whitehead_pair(const Cdga& model, const std::string& v, const BracketExpr& e);

/// Coefficient h with w^2 = h b. Requires the degree of b to be
/// one-dimensional and w^2 proportional to b.
Rational hopf_invariant(const Cdga& ring, const Element& w, const Element& b);

} // namespace rht
