#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "oplab/measure.hpp"

namespace oplab {

// ker C_T on the atomic carrier: every function supported on Omega_0. The
// span of the positive-weight atoms of Omega_0 is the complete invariant,
// so the set plus a dimension count describe the kernel fully.
struct KernelDescription {
    std::vector<std::size_t> omega0;
    std::size_t kernel_dimension = 0;
    bool is_zero_operator = false;
};

struct AscentResult {
    std::size_t ascent = 1;
    std::vector<std::size_t> stabilized_zero_set;
    // Omega_1, ..., Omega_{ascent+1}: a strictly increasing chain whose last
    // two entries coincide.
    std::vector<std::vector<std::size_t>> certificate;
};

struct AnalysisReport {
    bool nonsingular = true;
    std::optional<std::pair<std::size_t, std::size_t>> singular_witness;
    std::optional<KernelDescription> kernel;
    std::optional<bool> injective;
    std::optional<bool> essentially_surjective;
    bool measure_preserving = false;
    bool expansive = false;
    std::optional<AscentResult> ascent;
};

// Omega_0 and the kernel of C_T. Throws SingularTransformation when T is
// not nonsingular.
KernelDescription kernel(const AtomMap& T, const AtomicMeasureSpace& space);

struct InjectivityVerdict {
    bool injective = false;               // from kernel triviality
    bool essentially_surjective = false;  // from the essential image of T
};

// Both sides of the injectivity criterion, computed independently. The two
// verdicts must agree; disagreement throws TheoremViolation.
InjectivityVerdict is_injective(const AtomMap& T, const AtomicMeasureSpace& space);

// First k with mu_k and mu_{k+1} equivalent; at most the atom count on a
// finite carrier.
AscentResult ascent(const AtomMap& T, const AtomicMeasureSpace& space, std::size_t max_k = 0);

// Runs every decision procedure and asserts the cross-invariants
// (measure-preserving, expansive, and essentially surjective maps all have
// ascent 1).
AnalysisReport analyze(const AtomMap& T, const AtomicMeasureSpace& space);

}  // namespace oplab
