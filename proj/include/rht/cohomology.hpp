#pragma once

// Cohomology of truncated CDGAs and of morphisms (mapping cones), with
// quasi-isomorphism testing.

#include "rht/cdga.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace rht {

/// Raised when a query goes above the truncation cap the caller fixed.
class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cohomology of one spot C^{n-1} -> C^n -> C^{n+1} of a cochain complex,
/// given by the two differential matrices around it.
class CochainCohomology {
public:
    CochainCohomology(const LinearMap& d_in, const LinearMap& d_out);

    [[nodiscard]] std::size_t dimension() const { return dim_; }
    [[nodiscard]] std::size_t rank() const { return classes_.rank(); }
    [[nodiscard]] const Echelon& cocycles() const { return cocycles_; }
    [[nodiscard]] const Echelon& coboundaries() const { return coboundaries_; }
    /// Class representatives: cocycles reduced against the coboundaries, in RREF.
    [[nodiscard]] const Echelon& classes() const { return classes_; }

    [[nodiscard]] bool is_cocycle(const SparseVec& v) const;
    /// Coordinates of [v] in the class basis; nullopt if v is not a cocycle.
    [[nodiscard]] std::optional<SparseVec> class_of(const SparseVec& v) const;
    /// Canonical w with d w = v, or nullopt if v is not a coboundary.
    [[nodiscard]] std::optional<SparseVec> primitive(const SparseVec& v) const;

private:
    std::size_t dim_;
    LinearMap d_out_;
    LinearSolver in_solver_;
    Echelon cocycles_;
    Echelon coboundaries_;
    Echelon classes_;
};

struct CohomologyClass {
    int degree = 0;
    Element representative;
};

/// H^k(A) as an object that can also classify cocycles and find primitives.
class DegreeCohomology {
public:
    DegreeCohomology(const Cdga& algebra, int degree);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::size_t rank() const { return space_.rank(); }
    [[nodiscard]] std::size_t dimension() const { return space_.dimension(); }
    [[nodiscard]] const CochainCohomology& space() const { return space_; }
    [[nodiscard]] std::vector<CohomologyClass> classes() const;

    [[nodiscard]] bool is_cocycle(const Element& x) const;
    [[nodiscard]] std::optional<SparseVec> class_of(const Element& x) const;
    [[nodiscard]] bool is_exact(const Element& x) const;
    [[nodiscard]] std::optional<Element> primitive(const Element& x) const;

private:
    Cdga algebra_;
    int degree_;
    CochainCohomology space_;
};

struct CohomologyResult {
    int degree = 0;
    int cap = 0;
    std::size_t rank = 0;
    std::size_t dimension = 0;      // dim A^k
    std::size_t cocycle_rank = 0;   // dim ker d|A^k
    std::size_t coboundary_rank = 0; // dim im d|A^{k-1}
    std::vector<CohomologyClass> classes;
};

/// H^k(A) for k <= cap; throws CapError above the cap.
CohomologyResult cohomology(const Cdga& algebra, int k, int cap);

/// Differential C^n(phi) -> C^{n+1}(phi) of the mapping cone
/// C^n = A^n (+) B^{n-1}, d(a, b) = (da, phi(a) - db). Coordinates list the
/// A^n basis first, then the B^{n-1} basis.
LinearMap relative_differential(const DgaMorphism& phi, int n);

/// Splits a cone vector in degree n into its A^n and B^{n-1} elements.
std::pair<Element, Element> split_relative(const DgaMorphism& phi, int n, const SparseVec& v);
SparseVec join_relative(const DgaMorphism& phi, int n, const Element& a, const Element& b);

class RelativeCohomology {
public:
    RelativeCohomology(const DgaMorphism& phi, int degree);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::size_t rank() const { return space_.rank(); }
    [[nodiscard]] const CochainCohomology& space() const { return space_; }
    /// Class representatives as pairs (a, b) in A^n (+) B^{n-1}.
    [[nodiscard]] std::vector<std::pair<Element, Element>> classes() const;

    [[nodiscard]] bool is_cocycle(const Element& a, const Element& b) const;
    [[nodiscard]] std::optional<SparseVec> class_of(const Element& a, const Element& b) const;
    /// (a', b') in C^{n-1} whose differential is (a, b), if any.
    [[nodiscard]] std::optional<std::pair<Element, Element>> primitive(const Element& a,
                                                                       const Element& b) const;

private:
    DgaMorphism phi_;
    int degree_;
    CochainCohomology space_;
};

/// rank H^k(phi; V) = dim V * rank H^k(phi).
struct RelativeResult {
    int degree = 0;
    std::size_t coefficient_dim = 1;
    std::size_t cone_rank = 0;
    std::size_t rank = 0;
    std::vector<std::pair<Element, Element>> classes;
};

RelativeResult relative_cohomology(const DgaMorphism& phi, int k, std::size_t coefficient_dim = 1);

/// Matrix of H^k(phi) : H^k(A) -> H^k(B) in the class bases.
LinearMap induced_map(const DgaMorphism& phi, int k);

struct QuasiIsoReport {
    bool ok = true;
    int cap = 0;
    std::optional<int> failing_degree;
    std::size_t source_rank = 0; // at the failing degree
    std::size_t target_rank = 0;
    std::size_t map_rank = 0;
};

QuasiIsoReport check_quasi_isomorphism(const DgaMorphism& phi, int cap);
bool is_quasi_isomorphism(const DgaMorphism& phi, int cap);

/// Checks exactness of ... -> H^k(phi) -> H^k(A) -> H^k(B) -> H^{k+1}(phi) -> ...
/// at the three spots H^k(phi), H^k(A), H^k(B). Returns the spot that fails,
/// or nullopt when exact.
std::optional<std::string> long_exact_sequence_defect(const DgaMorphism& phi, int k);

} // namespace rht
