#pragma once

// Symbolic space descriptors and their scalability classification.
//
// Grammar
//   space   := atom | csum(item, ...) | prod(space, ...) | wedge(space, ...)
//            | skel(K, space)
//   item    := [N*] summand
//   summand := atom | rev(atom) | (atom)
//   atom    := Sn | CPk | HPk | OP2 | SnxSm

#include "rht/scalability.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rht {

class DescriptorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Space {
    enum class Kind { Atom, ConnectedSum, Product, Wedge, Skeleton } kind = Kind::Atom;
    Atom atom;
    std::vector<std::pair<long, Atom>> summands;
    std::vector<Space> parts;
    int skeleton = 0;
};

Space parse_space(const std::string& text);
std::string to_string(const Space& s);

/// Betti numbers for closed manifolds (atoms, connected sums, products of these).
std::optional<std::vector<std::size_t>> manifold_betti(const Space& s);

enum class Verdict { Scalable, NotScalable, Unknown };
std::string to_string(Verdict v);

struct Classification {
    std::string descriptor;
    Verdict verdict = Verdict::Unknown;
    Certificate certificate;
    std::optional<RingPresentation> ring;
    std::optional<EmbeddingWitness> witness;
    bool witness_verified = false;
    std::optional<RankBoundReport> rank_bound;
    std::vector<Classification> parts;
};

Classification classify(const Space& s);
Classification classify(const std::string& descriptor);

} // namespace rht
