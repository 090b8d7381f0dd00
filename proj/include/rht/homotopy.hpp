#pragma once

// Elements of B (x) Q<t,dt>, the integration operators, DGA homotopies and
// the obstruction to extending a map over an elementary extension.
//
// Sign conventions. An element is a sum of a (x) t^i and a (x) t^i dt with dt
// written on the right. d(t) = dt, so
//   d(a t^i)    = da t^i + (-1)^{|a|} i a t^{i-1} dt
//   d(a t^i dt) = da t^i dt
// and (a t^i dt)(b t^j) = (-1)^{|b|} ab t^{i+j} dt.

#include "rht/cdga.hpp"
#include "rht/cohomology.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rht {

class TDegreeOverflow : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

inline constexpr int default_t_cap = 16;

class HomotopyElement {
public:
    explicit HomotopyElement(Cdga algebra, int t_cap = default_t_cap);
    /// a (x) 1
    static HomotopyElement constant(const Cdga& algebra, const Element& a, int t_cap = default_t_cap);
    /// a (x) t^i, or a (x) t^i dt when with_dt is set
    static HomotopyElement term(const Cdga& algebra, const Element& a, int i, bool with_dt,
                                int t_cap = default_t_cap);

    [[nodiscard]] const Cdga& algebra() const { return algebra_; }
    [[nodiscard]] int t_cap() const { return t_cap_; }
    [[nodiscard]] const std::map<int, Element>& body() const { return body_; }
    [[nodiscard]] const std::map<int, Element>& dt_part() const { return dt_; }
    [[nodiscard]] bool is_zero() const { return body_.empty() && dt_.empty(); }

    void add_body(int i, const Element& a);
    void add_dt(int i, const Element& a);

    /// Restriction at t = t0, dt = 0.
    [[nodiscard]] Element at(const Rational& t0) const;
    [[nodiscard]] HomotopyElement differential() const;
    [[nodiscard]] HomotopyElement integrate_0_t() const;
    [[nodiscard]] Element integrate_0_1() const;
    /// t -> 1 - t, dt -> -dt
    [[nodiscard]] HomotopyElement reversed() const;

    HomotopyElement& operator+=(const HomotopyElement& o);
    HomotopyElement& operator-=(const HomotopyElement& o);
    HomotopyElement& operator*=(const Rational& c);
    friend HomotopyElement operator+(HomotopyElement a, const HomotopyElement& b) { return a += b; }
    friend HomotopyElement operator-(HomotopyElement a, const HomotopyElement& b) { return a -= b; }
    friend bool operator==(const HomotopyElement& a, const HomotopyElement& b);

    [[nodiscard]] HomotopyElement multiply(const HomotopyElement& o) const;

private:
    void check_same(const HomotopyElement& o) const;
    Cdga algebra_;
    int t_cap_;
    std::map<int, Element> body_;
    std::map<int, Element> dt_;
};

/// Homomorphism H : A -> B (x) Q<t,dt>, given on generators; H at t=0 and
/// t=1 are the endpoint morphisms.
class DgaHomotopy {
public:
    DgaHomotopy(Cdga source, Cdga target, std::vector<HomotopyElement> images);
    static DgaHomotopy constant(const DgaMorphism& f, int t_cap = default_t_cap);

    [[nodiscard]] const Cdga& source() const { return source_; }
    [[nodiscard]] const Cdga& target() const { return target_; }
    [[nodiscard]] const std::vector<HomotopyElement>& images() const { return images_; }

    [[nodiscard]] HomotopyElement apply(const Element& x) const;
    [[nodiscard]] DgaMorphism at_start() const;
    [[nodiscard]] DgaMorphism at_end() const;
    [[nodiscard]] DgaHomotopy reversed() const;

private:
    Cdga source_;
    Cdga target_;
    std::vector<HomotopyElement> images_;
};

/// The square
///     A  --f-->  B
///     |          |h
///   A<V> --g-->  C
/// with H : A -> C (x) Q<t,dt>, H at t=0 equal to g|A and at t=1 equal to h f.
/// A<V> is g's source; its first generators are those of A.
struct ExtensionProblem {
    DgaMorphism f;
    DgaMorphism g;
    DgaMorphism h;
    DgaHomotopy homotopy;
};

struct ObstructionClass {
    int degree = 0; // n = degree of the extension generators
    std::vector<std::uint32_t> generators;
    /// O(v) = (f(dv), g(v) + int_0^1 H(dv)) in B^{n+1} (+) C^n.
    std::vector<std::pair<Element, Element>> cocycle;
    std::vector<SparseVec> classes; // coordinates in H^{n+1}(h), one per v
    std::size_t relative_rank = 0;  // rank H^{n+1}(h)
    std::size_t class_rank = 0;     // rank of [O] as a map V -> H^{n+1}(h)
    bool vanishes = false;
    /// (b(v), c(v)) with db = f(dv), h(b) - dc = g(v) + int_0^1 H(dv)
    std::optional<std::vector<std::pair<Element, Element>>> primitive;
};

/// Validates the diagram and computes the obstruction class.
ObstructionClass obstruction_class(const ExtensionProblem& problem);

struct Extension {
    DgaMorphism f;       // A<V> -> B
    DgaHomotopy homotopy; // A<V> -> C (x) Q<t,dt>; t=0: g, t=1: h f
};

Extension extend_with_witness(const ExtensionProblem& problem,
                              const std::vector<std::pair<Element, Element>>& primitive);

/// Checks the endpoint and chain-map invariants of an extension; returns a
/// description of the first failure.
std::optional<std::string> extension_defect(const ExtensionProblem& problem, const Extension& ext);

} // namespace rht
