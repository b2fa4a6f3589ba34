#pragma once

#include <cstdint>
#include <vector>

#include "randles/circuit.hpp"

namespace randles {

/// Flattened coefficient map image, ordered (c_0..c_k1, d_0..d_{k2-1}).
struct CoefficientVector {
    std::vector<double> values;
    int k1 = 0;
    int k2 = 0;
};

enum class Classification {
    GloballyIdentifiable,
    LocallyIdentifiable,
    Unidentifiable,
};

struct IdentifiabilityVerdict {
    Classification classification = Classification::Unidentifiable;
    std::uint64_t solution_count = 0;
    std::vector<ModalParams> witnesses;
};

/// Flattens to_tf(modal) into the ordered coefficient vector C'_T(theta).
CoefficientVector coefficient_map(const ModalParams& modal);

/// Recovers every modal parameter set mapping to `target`: n! pole orderings
/// with uniquely determined residues, each re-mapping to target within 1e-8
/// relative. Throws Errc::NotInImage on complex/nonpositive roots or residues
/// or a failed re-map check, Errc::DuplicateRoots on pole ties within 1e-9
/// relative, Errc::EnumerationCap for n > 6.
std::vector<ModalParams> enumerate_solutions(const CoefficientVector& target, int n);

/// Structural classification: n=1 global; n>1 local with n! solutions;
/// n>1 under the ordering convention a_n < ... < a_1 global again.
IdentifiabilityVerdict classify(int n, bool ordered);

/// Sorts (a_i, b_i) pairs jointly so a is strictly decreasing. Throws
/// Errc::DuplicateRoots on ties within 1e-9 relative.
ModalParams canonical_ordering(const ModalParams& modal);

/// True when the pairs are already in canonical (strictly decreasing a)
/// order.
bool is_canonical(const ModalParams& modal);

}  // namespace randles
