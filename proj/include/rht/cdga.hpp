#pragma once

// Free graded-commutative algebras with a differential, optionally divided by
// a differential ideal, and the homomorphisms between them.
//
// Conventions
//  * Generators are ordered by declaration; a Monomial lists (generator index,
//    exponent) pairs in that order. Odd generators have exponent <= 1.
//  * Monomials are totally ordered lexicographically on their factor lists.
//    graded_basis() returns monomials in this order.
//  * A monomial is "normalized" when its factors are in canonical order; the
//    Koszul sign (-1)^{|u||v|} is applied for every transposition of two
//    factors u, v needed to get there.

#include "rht/kernels.hpp"
#include "rht/linalg.hpp"
#include "rht/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rht {

/// Thrown for malformed algebraic data (bad degrees, d^2 != 0, mixing algebras, ...).
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Generator {
    std::string name;
    int degree = 1;
    std::optional<int> stage; // W_i index for bigraded models

    friend bool operator==(const Generator&, const Generator&) = default;
};

class Monomial {
public:
    using Factor = std::pair<std::uint32_t, std::uint32_t>; // (generator, exponent)

    Monomial() = default; // the unit
    static Monomial generator(std::uint32_t index, std::uint32_t exponent = 1);
    /// Takes factors already in canonical order with positive exponents.
    static Monomial from_sorted(std::vector<Factor> factors);

    [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
    [[nodiscard]] bool is_one() const { return factors_.empty(); }
    /// Number of generator factors counted with multiplicity.
    [[nodiscard]] std::uint32_t length() const;
    [[nodiscard]] std::uint32_t exponent(std::uint32_t index) const;
    [[nodiscard]] bool divides(const Monomial& other) const;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
};

/// Exact rational combination of monomials. Elements remember the algebra that
/// produced them (owner id, 0 = not yet attached); arithmetic between elements
/// of two different algebras throws.
class Element {
public:
    Element() = default;
    static Element scalar(const Rational& c);
    static Element monomial(const Monomial& m, const Rational& c = 1);
    static Element generator(std::uint32_t index);

    [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::uint64_t owner() const { return owner_; }
    [[nodiscard]] Rational coefficient(const Monomial& m) const;

    Element& operator+=(const Element& other);
    Element& operator-=(const Element& other);
    Element& operator*=(const Rational& c);
    void add_term(const Monomial& m, const Rational& c);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= Rational(-1); }
    friend Element operator*(const Rational& c, Element a) { return a *= c; }
    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

private:
    friend class Cdga;
    void check_owner(const Element& other) const;

    std::uint64_t owner_ = 0;
    std::map<Monomial, Rational> terms_;
};

/// A monomial together with the sign picked up while normalizing it.
struct SignedMonomial {
    Monomial monomial;
    int sign = 1;
    friend bool operator==(const SignedMonomial&, const SignedMonomial&) = default;
};

/// Free graded-commutative algebra on finitely many generators, with a
/// differential given on generators and an optional homogeneous d-stable
/// ideal of relations (a quotient presentation). When top_degree is set,
/// every monomial of larger degree is also treated as zero.
///
/// Values are immutable and cheap to copy; copies denote the same algebra.
class Cdga {
public:
    Cdga(); // the ground field Q, no generators
    Cdga(std::vector<Generator> generators, std::vector<Element> differential,
         std::vector<Element> relations = {}, std::optional<int> top_degree = std::nullopt);

    /// Zero-differential algebra on the given generators.
    static Cdga free(std::vector<Generator> generators);

    [[nodiscard]] std::uint64_t id() const;
    [[nodiscard]] const std::vector<Generator>& generators() const;
    [[nodiscard]] std::size_t generator_count() const { return generators().size(); }
    [[nodiscard]] const Generator& generator(std::size_t index) const { return generators().at(index); }
    [[nodiscard]] std::optional<std::uint32_t> find(const std::string& name) const;
    [[nodiscard]] std::uint32_t index_of(const std::string& name) const; // throws
    [[nodiscard]] Element gen(const std::string& name) const;
    [[nodiscard]] Element one() const;
    [[nodiscard]] const Element& d_of_generator(std::size_t index) const;
    [[nodiscard]] const std::vector<Element>& relations() const;
    [[nodiscard]] std::optional<int> top_degree() const;
    [[nodiscard]] bool is_free() const { return relations().empty() && !top_degree(); }
    [[nodiscard]] int max_generator_degree() const;

    [[nodiscard]] bool is_odd(std::size_t index) const { return generator(index).degree % 2 != 0; }
    [[nodiscard]] int degree(const Monomial& m) const;
    /// Degree of a nonzero homogeneous element; nullopt for zero or mixed.
    [[nodiscard]] std::optional<int> degree(const Element& x) const;
    [[nodiscard]] bool is_homogeneous(const Element& x) const;

    /// Normalizes a word of generator indices; nullopt when an odd generator repeats.
    [[nodiscard]] std::optional<SignedMonomial> normalize(std::span<const std::uint32_t> word) const;
    /// Product of two normalized monomials (nullopt when it vanishes in the free algebra).
    [[nodiscard]] std::optional<SignedMonomial> multiply(const Monomial& a, const Monomial& b) const;

    /// Attaches an element built from raw generator indices to this algebra
    /// (checks indices) and reduces it to normal form.
    [[nodiscard]] Element adopt(const Element& x) const;
    [[nodiscard]] bool contains(const Element& x) const;

    [[nodiscard]] Element multiply(const Element& x, const Element& y) const;
    [[nodiscard]] Element power(const Element& x, unsigned k) const;
    [[nodiscard]] Element differential(const Element& x) const;
    [[nodiscard]] Element normal_form(const Element& x) const;

    /// Monomials of degree k that form a basis of the (quotient) degree-k piece.
    [[nodiscard]] const std::vector<Monomial>& graded_basis(int k) const;
    /// All monomials of degree k in the free algebra, ignoring relations.
    [[nodiscard]] std::vector<Monomial> free_monomials(int k) const;
    [[nodiscard]] std::size_t dimension(int k) const { return graded_basis(k).size(); }

    [[nodiscard]] SparseVec to_vector(const Element& x, int k) const;
    [[nodiscard]] Element from_vector(const SparseVec& v, int k) const;
    /// Matrix of d : A^k -> A^{k+1} in the graded bases.
    [[nodiscard]] LinearMap differential_map(int k) const;

    /// New algebra with extra generators appended (their differentials may use
    /// the old generators). Relations and top degree carry over.
    [[nodiscard]] Cdga extended(std::vector<Generator> extra, std::vector<Element> extra_d) const;

    friend bool operator==(const Cdga& a, const Cdga& b) { return a.id() == b.id(); }

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;

    void validate() const;
    [[nodiscard]] Element differential_of_monomial(const Monomial& m) const;
    [[nodiscard]] bool in_monomial_ideal(const Monomial& m) const;
    struct DegreeData;
    [[nodiscard]] const DegreeData& degree_data(int k) const;
};

/// Homomorphism of CDGAs determined by the images of the source generators.
/// Construction checks degrees, the chain-map identity phi(dv) = d phi(v) on
/// generators, and that source relations map to zero.
class DgaMorphism {
public:
    DgaMorphism(Cdga source, Cdga target, std::vector<Element> images);

    static DgaMorphism identity(const Cdga& a);
    static DgaMorphism zero(const Cdga& source, const Cdga& target);

    [[nodiscard]] const Cdga& source() const { return source_; }
    [[nodiscard]] const Cdga& target() const { return target_; }
    [[nodiscard]] const std::vector<Element>& images() const { return images_; }
    [[nodiscard]] const Element& image(std::size_t generator) const { return images_.at(generator); }

    [[nodiscard]] Element apply(const Element& x) const;
    [[nodiscard]] Element apply(const Monomial& m) const;
    /// Matrix of the induced map source^k -> target^k.
    [[nodiscard]] LinearMap linear_map(int k) const;

private:
    Cdga source_;
    Cdga target_;
    std::vector<Element> images_;
};

/// Copies x into `to`, reading generator indices literally (used to move
/// elements between an algebra and an extension sharing its first generators).
Element transfer(const Element& x, const Cdga& to);

/// Part of x whose monomials have exactly `length` generator factors.
Element part_of_length(const Element& x, std::uint32_t length);

/// psi o phi
DgaMorphism compose(const DgaMorphism& psi, const DgaMorphism& phi);

// Test hook: when on, products ignore the Koszul sign (used to check that the
// verification battery notices a sign bug).
namespace fault {
void set_koszul_sign_fault(bool on);
bool koszul_sign_fault();
} // namespace fault

} // namespace rht
