#include "oplab/measure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "oplab/errors.hpp"

namespace oplab {

AtomicMeasureSpace::AtomicMeasureSpace(std::vector<std::string> atoms, std::vector<Rat> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty()) {
        throw ValidationError("measure space needs at least one atom");
    }
    if (atoms_.size() != weights_.size()) {
        throw ValidationError("atom/weight count mismatch");
    }
    std::set<std::string> seen;
    for (const auto& id : atoms_) {
        if (!seen.insert(id).second) {
            throw ValidationError("duplicate atom id '" + id + "'");
        }
    }
    bool any_positive = false;
    for (const auto& w : weights_) {
        if (w < Rat(0)) {
            throw ValidationError("negative atom weight");
        }
        any_positive = any_positive || w > Rat(0);
    }
    if (!any_positive) {
        throw ValidationError("all atom weights are zero");
    }
}

Rat AtomicMeasureSpace::total_mass() const {
    return std::accumulate(weights_.begin(), weights_.end(), Rat(0));
}

std::vector<double> AtomicMeasureSpace::weights_as_doubles() const {
    std::vector<double> out;
    out.reserve(weights_.size());
    for (const auto& w : weights_) {
        out.push_back(to_double(w));
    }
    return out;
}

AtomMap::AtomMap(std::vector<std::size_t> mapping, std::size_t space_size)
    : mapping_(std::move(mapping)) {
    if (mapping_.size() != space_size) {
        throw ValidationError("atom map must be total on the atom list");
    }
    for (std::size_t image : mapping_) {
        if (image >= space_size) {
            throw ValidationError("atom map image out of range");
        }
    }
}

AtomMap AtomMap::iterate(std::size_t k) const {
    std::vector<std::size_t> result(mapping_.size());
    std::iota(result.begin(), result.end(), std::size_t{0});
    for (std::size_t step = 0; step < k; ++step) {
        for (std::size_t& a : result) {
            a = mapping_[a];
        }
    }
    return AtomMap(std::move(result), mapping_.size());
}

NonsingularityResult is_nonsingular(const AtomMap& T, const AtomicMeasureSpace& space) {
    if (T.size() != space.size()) {
        throw CarrierMismatch("atom map does not match the measure space");
    }
    for (std::size_t x = 0; x < space.size(); ++x) {
        const std::size_t a = T(x);
        if (space.weight(a) == Rat(0) && space.weight(x) > Rat(0)) {
            return {false, std::make_pair(x, a)};
        }
    }
    return {true, std::nullopt};
}

PushforwardMeasure pushforward(const AtomMap& T, const AtomicMeasureSpace& space, std::size_t k) {
    if (T.size() != space.size()) {
        throw CarrierMismatch("atom map does not match the measure space");
    }
    if (k == 0) {
        throw ValidationError("pushforward order must be >= 1");
    }
    const AtomMap Tk = T.iterate(k);
    PushforwardMeasure mu_k{k, std::vector<Rat>(space.size(), Rat(0))};
    for (std::size_t x = 0; x < space.size(); ++x) {
        mu_k.weights[Tk(x)] += space.weight(x);
    }
    return mu_k;
}

RNDerivative rn_derivative(const PushforwardMeasure& mu_k, const AtomicMeasureSpace& space) {
    if (mu_k.weights.size() != space.size()) {
        throw CarrierMismatch("pushforward does not match the measure space");
    }
    RNDerivative d{mu_k.order, std::vector<Rat>(space.size(), Rat(0))};
    for (std::size_t a = 0; a < space.size(); ++a) {
        if (space.weight(a) > Rat(0)) {
            d.values[a] = mu_k.weights[a] / space.weight(a);
        } else if (mu_k.weights[a] > Rat(0)) {
            throw AbsoluteContinuityViolated(
                "mu_k is not absolutely continuous w.r.t. mu at atom '" + space.atoms()[a] + "'",
                a);
        }
        // mu-null atoms keep value 0: the RN derivative is only a.e. unique,
        // and 0 keeps the zero-set chain monotone.
    }
    return d;
}

std::vector<std::size_t> zero_set(const RNDerivative& d) {
    std::vector<std::size_t> zeros;
    for (std::size_t a = 0; a < d.values.size(); ++a) {
        if (d.values[a] == Rat(0)) {
            zeros.push_back(a);
        }
    }
    return zeros;
}

bool measures_equivalent(const PushforwardMeasure& m1, const PushforwardMeasure& m2) {
    if (m1.weights.size() != m2.weights.size()) {
        throw CarrierMismatch("measures live on different carriers");
    }
    for (std::size_t a = 0; a < m1.weights.size(); ++a) {
        if ((m1.weights[a] == Rat(0)) != (m2.weights[a] == Rat(0))) {
            return false;
        }
    }
    return true;
}

std::vector<Rat> rn_chain_factor(const PushforwardMeasure& m_k, const PushforwardMeasure& m_k1,
                                 const AtomicMeasureSpace& space) {
    if (m_k.weights.size() != space.size() || m_k1.weights.size() != space.size()) {
        throw CarrierMismatch("measures do not match the carrier space");
    }
    if (!measures_equivalent(m_k, m_k1)) {
        throw NotEquivalent("rn_chain_factor requires equivalent measures");
    }
    std::vector<Rat> factors(space.size(), Rat(1));
    for (std::size_t a = 0; a < space.size(); ++a) {
        if (m_k1.weights[a] > Rat(0)) {
            factors[a] = m_k.weights[a] / m_k1.weights[a];
        }
        // Both zero: convention 1 keeps the factor a.e.-positive.
    }
    return factors;
}

bool is_measure_preserving(const AtomMap& T, const AtomicMeasureSpace& space) {
    const PushforwardMeasure mu_1 = pushforward(T, space, 1);
    return mu_1.weights == space.weights();
}

bool is_expansive(const AtomMap& T, const AtomicMeasureSpace& space) {
    const PushforwardMeasure mu_1 = pushforward(T, space, 1);
    for (std::size_t a = 0; a < space.size(); ++a) {
        if (mu_1.weights[a] < space.weight(a)) {
            return false;
        }
    }
    return true;
}

}  // namespace oplab
