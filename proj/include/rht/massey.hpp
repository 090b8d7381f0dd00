#pragma once

// Triple Massey products with explicit indeterminacy.

#include "rht/cohomology.hpp"

namespace rht {

/// Raised when [x][y] or [y][z] is nonzero; names the offending product.
class MasseyError : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

struct MasseyResult {
    int degree = 0;
    Element xi;              // d xi = x y
    Element eta;             // d eta = y z
    Element representative;  // xi z - (-1)^{|x|} x eta
    SparseVec coordinates;   // of the class in H^degree
    std::size_t cohomology_rank = 0;
    Echelon indeterminacy;   // x H^{|y|+|z|-1} + H^{|x|+|y|-1} z, in class coordinates
    bool vanishes = false;   // class lies in the indeterminacy
};

MasseyResult massey_triple(const Cdga& algebra, const CohomologyClass& x, const CohomologyClass& y,
                           const CohomologyClass& z);

} // namespace rht
