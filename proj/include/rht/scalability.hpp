#pragma once

// The three non-embeddable families, witnesses for the embeddable range,
// connected-sum rings and intersection-complete families of index sets.

#include "rht/exterior.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rht {

/// A machine-checkable reason: kind is "dimension-count", "inertia",
/// "linear-system", "rank-bound", "witness", "closure" or "gap".
struct Certificate {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;
    std::string summary;
};

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    bool dense_checked = false;
};

/// Signature of (x, y) -> x y / vol on Lambda^n R^{2n}. Assembled from the
/// 2x2 blocks {dx_I, dx_{I^c}}; for n <= 4 also cross-checked against the
/// dense exact inertia of the full Gram matrix (mismatch throws).
Signature wedge_pairing_signature(int n);
Signature wedge_pairing_signature(int n, bool dense_check);

/// The n-subsets of {0, .., 2n-1} containing 0, lexicographic.
std::vector<std::vector<int>> half_subsets(int n);

struct Decision {
    bool embeddable = false;
    int n = 0;
    long r = 0;
    std::optional<RingPresentation> ring;
    std::optional<EmbeddingWitness> witness;
    bool witness_verified = false;
    Certificate certificate;
};

/// Sigma_{n,p+q}: p atoms with a^2 = vol and q with a^2 = -vol (n even).
/// Witnesses are verified when verify is set and the ring is small enough to build.
Decision decide_sigma(int n, long p, long q = 0, bool verify = true);
Decision decide_omega(int n, long r, bool verify = true);

struct PiDecision {
    int n = 0;
    long r = 0;
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t nullspace_dimension = 0; // solutions among eta = sum u_i dx_{2i-1} dx_{2i}
    std::size_t full_nullspace_dimension = 0; // all eta in Lambda^2 with omega eta = 0
    std::vector<Element> nullspace; // basis of the diagonal solutions
    bool not_embeddable = false;
    Certificate certificate;
};

/// Solves omega eta = 0 for eta in Lambda^2 R^{2n}; n >= 2.
PiDecision decide_pi(int n, long r);

/// Ring atoms. A projective atom has one generator of degree `step` with
/// x^{k+1} = 0, fundamental step*k; a product atom is S^n x S^m.
struct Atom {
    enum class Kind { Sphere, Product, Projective } kind = Kind::Sphere;
    int n = 0;    // sphere / first factor degree / generator degree
    int m = 0;    // second factor degree
    int k = 0;    // projective height
    bool reversed = false;

    static Atom sphere(int n);
    static Atom product(int n, int m);
    static Atom projective(int step, int k);
    [[nodiscard]] int fundamental() const;
    [[nodiscard]] std::string name() const;
    [[nodiscard]] std::vector<std::size_t> betti() const;
};

RingPresentation atom_ring(const Atom& a);

/// Generators a{i}, b{i} per atom, cross products zero, top classes identified
/// with s_i top_i = s_1 top_1 (s = -1 for reversed atoms). Sphere atoms drop out.
RingPresentation connected_sum_ring(const std::vector<Atom>& summands);
std::vector<std::size_t> connected_sum_betti(const std::vector<Atom>& summands);

struct SetFamily {
    int ground = 0; // ground set {0, .., ground}
    std::vector<std::vector<int>> members;
};

/// Throws on repeated, empty or improper members and out-of-range elements.
void validate(const SetFamily& f);

struct IntersectionCheck {
    bool complete = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
    std::string reason;
};

IntersectionCheck intersection_complete(const SetFamily& f);

struct FamilyWitness {
    RingPresentation ring;
    EmbeddingWitness witness;
    WitnessCheck check;
};

/// Assigns to each I its form dx_I and to I^c a signed dx_{I^c}, as a
/// witness for the connected sum of S^{|I|} x S^{k+1-|I|}.
FamilyWitness family_local_forms(const SetFamily& f);

} // namespace rht
