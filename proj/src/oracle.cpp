#include "oplab/oracle.hpp"

#include <algorithm>

#include "oplab/errors.hpp"

namespace oplab {

std::vector<std::size_t> oracle_kernel(const AtomMap& T, const AtomicMeasureSpace& space) {
    std::vector<std::size_t> in_kernel;
    for (std::size_t a = 0; a < space.size(); ++a) {
        Rat preimage_mass(0);
        for (std::size_t x = 0; x < space.size(); ++x) {
            if (T(x) == a) {
                preimage_mass += space.weight(x);
            }
        }
        if (preimage_mass == Rat(0)) {
            in_kernel.push_back(a);
        }
    }
    return in_kernel;
}

std::size_t oracle_ascent(const AtomMap& T, const AtomicMeasureSpace& space) {
    std::vector<std::size_t> prev = oracle_kernel(T, space);
    for (std::size_t k = 1; k <= space.size() + 1; ++k) {
        const std::vector<std::size_t> next = oracle_kernel(T.iterate(k + 1), space);
        if (next == prev) {
            return k;
        }
        prev = next;
    }
    throw TheoremViolation("oracle kernel chain did not stabilize within the atom count");
}

bool oracle_expansive(const AtomMap& T, const AtomicMeasureSpace& space) {
    if (space.size() > 12) {
        throw TooManyAtoms("oracle_expansive enumerates 2^n subsets; capped at 12 atoms");
    }
    const std::size_t subsets = std::size_t{1} << space.size();
    for (std::size_t e = 0; e < subsets; ++e) {
        Rat mass(0);
        Rat preimage_mass(0);
        for (std::size_t x = 0; x < space.size(); ++x) {
            if ((e >> x) & 1) {
                mass += space.weight(x);
            }
            if ((e >> T(x)) & 1) {
                preimage_mass += space.weight(x);
            }
        }
        if (preimage_mass < mass) {
            return false;
        }
    }
    return true;
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, std::size_t max_atoms,
                                     std::vector<Rat> weight_pool, bool nonsingular_only,
                                     std::size_t rejection_cap)
    : rng_(seed),
      max_atoms_(max_atoms),
      weight_pool_(std::move(weight_pool)),
      nonsingular_only_(nonsingular_only),
      rejection_cap_(rejection_cap) {
    if (max_atoms_ < 1 || max_atoms_ > 12) {
        throw ValidationError("instance generator supports 1..12 atoms");
    }
    if (weight_pool_.empty()) {
        throw ValidationError("weight pool must not be empty");
    }
    if (std::all_of(weight_pool_.begin(), weight_pool_.end(),
                    [](const Rat& w) { return w == Rat(0); })) {
        throw ValidationError("weight pool needs a positive entry");
    }
}

std::size_t InstanceGenerator::draw(std::size_t bound) {
    return static_cast<std::size_t>(rng_() % bound);
}

std::pair<AtomicMeasureSpace, AtomMap> InstanceGenerator::next() {
    for (std::size_t attempt = 0; attempt < rejection_cap_; ++attempt) {
        const std::size_t n = max_atoms_ == 1 ? 1 : 2 + draw(max_atoms_ - 1);
        std::vector<std::string> atoms;
        std::vector<Rat> weights;
        bool any_positive = false;
        for (std::size_t i = 0; i < n; ++i) {
            atoms.push_back("a" + std::to_string(i));
            weights.push_back(weight_pool_[draw(weight_pool_.size())]);
            any_positive = any_positive || weights.back() > Rat(0);
        }
        if (!any_positive) {
            continue;
        }
        std::vector<std::size_t> mapping;
        for (std::size_t i = 0; i < n; ++i) {
            mapping.push_back(draw(n));
        }
        AtomicMeasureSpace space(std::move(atoms), std::move(weights));
        AtomMap map(std::move(mapping), space.size());
        if (nonsingular_only_ && !is_nonsingular(map, space).nonsingular) {
            continue;
        }
        return {std::move(space), std::move(map)};
    }
    throw RejectionExhausted("instance generator exceeded its rejection cap");
}

std::pair<AtomicMeasureSpace, AtomMap> InstanceGenerator::next_permutation() {
    const std::size_t n = max_atoms_ == 1 ? 1 : 2 + draw(max_atoms_ - 1);
    std::vector<std::string> atoms;
    std::vector<Rat> weights(n, Rat(1));
    for (std::size_t i = 0; i < n; ++i) {
        atoms.push_back("a" + std::to_string(i));
    }
    std::vector<std::size_t> mapping(n);
    std::iota(mapping.begin(), mapping.end(), std::size_t{0});
    // Fisher-Yates with the pinned draw, not std::shuffle, to keep the
    // stream identical across standard library implementations.
    for (std::size_t i = n; i > 1; --i) {
        std::swap(mapping[i - 1], mapping[draw(i)]);
    }
    AtomicMeasureSpace space(std::move(atoms), std::move(weights));
    AtomMap map(std::move(mapping), space.size());
    return {std::move(space), std::move(map)};
}

}  // namespace oplab
