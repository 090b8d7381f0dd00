#pragma once

// Sullivan minimal models: the stagewise construction, the bigraded model of
// a cohomology ring, the depth filtration, grading automorphisms, the
// one-cell (non-minimal) extension and distortion exponents.

#include "rht/cdga.hpp"
#include "rht/cohomology.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rht {

struct MinimalModel {
    Cdga model;
    DgaMorphism quasi_iso; // model -> target
    int cap = 0;
    bool bigraded = false;      // every generator carries a stage tag
    bool trivial = false;       // cap too small to see any generator
    std::vector<std::string> warnings;

    /// Indices of the generators of the given degree (V_k).
    [[nodiscard]] std::vector<std::uint32_t> generators_of_degree(int k) const;
};

/// Options for the stagewise construction. `on_stage` is called after each
/// degree with the number of generators added (used for progress output).
struct ModelOptions {
    std::function<void(int, std::size_t)> on_stage;
};

/// Minimal model of a connected, simply connected finite-type CDGA through
/// degree `cap`. New generators are named v<deg>_<depth>_<j>; a closed
/// generator hitting a single target generator takes that generator's name.
MinimalModel minimal_model(const Cdga& target, int cap, const ModelOptions& options = {});

/// Bigraded (Halperin-Stasheff) model of a cohomology ring given as a CDGA
/// with zero differential. Generators of W_0 that hit a ring generator keep
/// its name; the others are named w<stage>_<deg>_<j>.
MinimalModel bigraded_model(const Cdga& ring, int cap);

/// Checks that no generator differential has a linear term; returns the
/// offending generator name otherwise.
std::optional<std::string> minimality_defect(const Cdga& model);

struct DepthFiltration {
    std::vector<int> depth; // per generator

    /// Depth of a monomial: sum of the depths of its factors.
    [[nodiscard]] int monomial_depth(const Monomial& m) const;
    /// Filtration level of an element: largest monomial depth (-1 for zero).
    [[nodiscard]] int level(const Element& x) const;
    /// dim (V_k cap U_l): generators of degree k with depth <= l.
    [[nodiscard]] std::size_t dimension(const Cdga& model, int k, int l) const;
    /// Generators of degree k with depth exactly l.
    [[nodiscard]] std::size_t count_exact(const Cdga& model, int k, int l) const;
};

/// Least fixed point of: depth(v) = 0 if dv = 0, else 1 + level(dv).
DepthFiltration depth_filtration(const Cdga& model);
inline DepthFiltration depth_filtration(const MinimalModel& m) { return depth_filtration(m.model); }

/// Endomorphism w -> t^{i+j} w for w in W_i of degree j.
DgaMorphism grading_automorphism(const MinimalModel& m, const Rational& t);

enum class Sharpness { SharpIfScalable, UpperBoundOnly };
std::string to_string(Sharpness s);

struct DistortionReport {
    std::string generator;
    int degree = 0;
    int depth = 0;
    int exponent = 0;
    Sharpness sharpness = Sharpness::SharpIfScalable;
};

DistortionReport distortion_exponent(const MinimalModel& m, const std::string& generator);
DistortionReport distortion_exponent(const Cdga& model, const std::string& generator);

/// Model of W with one cell e^n attached: y of degree n, y^2 = 0, x y = 0 for
/// every generator x, and d'x = dx + <x,[f]> y on generators of degree n-1.
struct CellAttachmentModel {
    Cdga model;
    std::uint32_t y = 0;
    int cell_degree = 0;
    std::map<std::string, Rational> pairing;
    std::vector<std::uint32_t> base_closed; // depth-0 generators of the base
};

CellAttachmentModel attach_cell_model(const MinimalModel& base, int cell_degree,
                                      const std::map<std::string, Rational>& pairing,
                                      const std::string& cell_name = "y");

/// For each k <= cap: is the map from the algebra generated by `closed`
/// generators onto H^k surjective? (A necessary condition for formality.)
std::vector<bool> u0_surjectivity(const Cdga& model, const std::vector<std::uint32_t>& closed, int cap);
std::vector<bool> u0_surjectivity(const MinimalModel& m);
std::vector<bool> u0_surjectivity(const CellAttachmentModel& m, int cap);

} // namespace rht
