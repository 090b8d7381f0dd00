#pragma once

// Exterior algebras, presented cohomology rings and embeddings of the latter
// into the former.

#include "rht/cdga.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rht {

/// Lambda^* R^N on generators dx1 .. dxN (all of degree 1, zero differential).
class ExteriorAlgebra {
public:
    explicit ExteriorAlgebra(int n);

    [[nodiscard]] int dimension() const { return n_; }
    [[nodiscard]] const Cdga& algebra() const { return algebra_; }

    /// dx_{i1} ... dx_{ik} for 0-based indices in the given order.
    [[nodiscard]] Element dx(const std::vector<int>& indices) const;
    [[nodiscard]] Element volume() const;
    /// Sign s with dx_I dx_{I^c} = s vol, for I sorted.
    [[nodiscard]] int complement_sign(const std::vector<int>& subset) const;
    /// dx1 dx2 + dx3 dx4 + ... (requires even N).
    [[nodiscard]] Element symplectic_form() const;

private:
    int n_;
    Cdga algebra_;
};

/// Graded ring with zero differential. The relations are imposed through the
/// quotient Cdga, and the fundamental degree (when set) truncates above it.
struct RingPresentation {
    std::string name;
    Cdga ring;
    std::optional<int> fundamental;
    bool duality = false;

    [[nodiscard]] std::vector<std::size_t> ranks() const;
};

/// Builds a ring; when `duality` is set the Poincare pairing is checked and a
/// failure throws AlgebraError.
RingPresentation make_ring(std::string name, std::vector<Generator> generators, std::vector<Element> relations,
                           std::optional<int> fundamental, bool duality);

/// nullopt when H^k x H^{n-k} -> H^n is nonsingular for every k and H^n has
/// rank one; otherwise a description of the first failure.
std::optional<std::string> duality_defect(const Cdga& ring, int n);

struct EmbeddingWitness {
    ExteriorAlgebra target;
    std::vector<Element> images; // indexed like the ring generators
    std::vector<std::string> notes;
};

struct WitnessCheck {
    bool ok = false;
    std::string failure;
    bool used_duality_shortcut = false;
};

/// Image in the exterior algebra of an element of the ring's free algebra.
Element evaluate(const RingPresentation& ring, const EmbeddingWitness& w, const Element& x);

/// Degrees, vanishing of every relation, then injectivity: degreewise
/// independence of the images of the graded basis, or with the duality flag
/// set (and full == false) only nonvanishing of the fundamental class.
WitnessCheck verify_witness(const RingPresentation& ring, const EmbeddingWitness& w, bool full = false);

struct RankBoundEntry {
    int degree = 0;
    std::size_t rank = 0;
    unsigned long long bound = 0;
    bool pass = true;
};

struct RankBoundReport {
    int manifold_dimension = 0;
    std::vector<RankBoundEntry> degrees;
    [[nodiscard]] bool pass() const;
    [[nodiscard]] std::optional<RankBoundEntry> first_failure() const;
};

RankBoundReport rank_bound_check(const std::vector<std::size_t>& ranks, int n);
RankBoundReport rank_bound_check(const RingPresentation& ring, int n);

} // namespace rht
