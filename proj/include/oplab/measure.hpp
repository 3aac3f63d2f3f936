#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oplab/rational.hpp"

namespace oplab {

// Finite atomic measure space (Omega, Sigma, mu) with Sigma the full power
// set. Weights are exact rationals: the kernel/ascent theorems are about
// exact null sets, so no tolerance enters this module.
class AtomicMeasureSpace {
public:
    AtomicMeasureSpace(std::vector<std::string> atoms, std::vector<Rat> weights);

    std::size_t size() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<Rat>& weights() const { return weights_; }
    const Rat& weight(std::size_t i) const { return weights_[i]; }

    Rat total_mass() const;
    std::vector<double> weights_as_doubles() const;

private:
    std::vector<std::string> atoms_;
    std::vector<Rat> weights_;
};

// A total self-map of the atom set; measurability is automatic on the
// power-set sigma-algebra.
class AtomMap {
public:
    AtomMap(std::vector<std::size_t> mapping, std::size_t space_size);

    std::size_t size() const { return mapping_.size(); }
    std::size_t operator()(std::size_t atom) const { return mapping_[atom]; }
    const std::vector<std::size_t>& mapping() const { return mapping_; }

    // T^k by explicit k-fold composition.
    AtomMap iterate(std::size_t k) const;

private:
    std::vector<std::size_t> mapping_;
};

// mu_k = mu . T^{-k}.
struct PushforwardMeasure {
    std::size_t order = 1;
    std::vector<Rat> weights;
};

// f_{T^k} = d mu_k / d mu, atomwise weight ratios; 0 on mu-null atoms.
struct RNDerivative {
    std::size_t order = 1;
    std::vector<Rat> values;
};

struct NonsingularityResult {
    bool nonsingular = true;
    // (preimage atom, null image atom) on failure.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// T is nonsingular iff preimages of mu-null atoms are mu-null.
NonsingularityResult is_nonsingular(const AtomMap& T, const AtomicMeasureSpace& space);

PushforwardMeasure pushforward(const AtomMap& T, const AtomicMeasureSpace& space, std::size_t k);

// Throws AbsoluteContinuityViolated if mu({a}) = 0 but mu_k({a}) > 0.
RNDerivative rn_derivative(const PushforwardMeasure& mu_k, const AtomicMeasureSpace& space);

// Omega_k = {a : f_{T^k}(a) = 0}; exact.
std::vector<std::size_t> zero_set(const RNDerivative& d);

// Mutual absolute continuity; on atoms this is equality of null-atom sets.
bool measures_equivalent(const PushforwardMeasure& m1, const PushforwardMeasure& m2);

// Per-atom d mu_k / d mu_{k+1}; 1 where both vanish, by convention. Requires
// measures_equivalent, else throws NotEquivalent.
std::vector<Rat> rn_chain_factor(const PushforwardMeasure& m_k, const PushforwardMeasure& m_k1,
                                 const AtomicMeasureSpace& space);

bool is_measure_preserving(const AtomMap& T, const AtomicMeasureSpace& space);

// mu(T^{-1}(E)) >= mu(E) for all E, decided atomwise: mu_1({a}) >= mu({a})
// for every atom is equivalent on atomic spaces (sum the atomwise
// inequalities for one direction, take singletons for the other).
bool is_expansive(const AtomMap& T, const AtomicMeasureSpace& space);

}  // namespace oplab
