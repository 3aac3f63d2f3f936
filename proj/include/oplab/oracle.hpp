#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "oplab/measure.hpp"

namespace oplab {

// Kernel of C_T probed with indicator functions: e_a lies in the kernel iff
// mu(T^{-1}{a}) = 0, by direct preimage enumeration. Kernel membership on
// the atomic carrier depends only on support, so the set of such atoms
// determines the kernel; no Radon-Nikodym machinery is used.
std::vector<std::size_t> oracle_kernel(const AtomMap& T, const AtomicMeasureSpace& space);

// Ascent via direct kernel chains of the explicitly composed T^k, never
// touching pushforward measures.
std::size_t oracle_ascent(const AtomMap& T, const AtomicMeasureSpace& space);

// Literal check of mu(T^{-1}(E)) >= mu(E) over all 2^n subsets E.
// Throws TooManyAtoms above 12 atoms.
bool oracle_expansive(const AtomMap& T, const AtomicMeasureSpace& space);

// Deterministic random instances. The stream is pinned to std::mt19937_64
// (an algorithm fixed by the C++ standard) with bounded draws taken by
// modulo, so identical seeds give identical streams on every platform.
class InstanceGenerator {
public:
    InstanceGenerator(std::uint64_t seed, std::size_t max_atoms, std::vector<Rat> weight_pool,
                      bool nonsingular_only, std::size_t rejection_cap = 10000);

    std::pair<AtomicMeasureSpace, AtomMap> next();

    // Equal-weight space with a uniformly shuffled permutation map
    // (measure preserving by construction).
    std::pair<AtomicMeasureSpace, AtomMap> next_permutation();

private:
    std::size_t draw(std::size_t bound);  // uniform-ish in [0, bound)

    std::mt19937_64 rng_;
    std::size_t max_atoms_;
    std::vector<Rat> weight_pool_;
    bool nonsingular_only_;
    std::size_t rejection_cap_;
};

}  // namespace oplab
