#include "oplab/analysis.hpp"

#include <algorithm>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

void require_nonsingular(const AtomMap& T, const AtomicMeasureSpace& space) {
    const auto result = is_nonsingular(T, space);
    if (!result.nonsingular) {
        throw SingularTransformation("T is singular: atom '" +
                                     space.atoms()[result.witness->first] +
                                     "' has positive weight but maps to the null atom '" +
                                     space.atoms()[result.witness->second] + "'");
    }
}

}  // namespace

KernelDescription kernel(const AtomMap& T, const AtomicMeasureSpace& space) {
    require_nonsingular(T, space);
    KernelDescription desc;
    desc.omega0 = zero_set(rn_derivative(pushforward(T, space, 1), space));
    bool positive_outside = false;
    std::vector<bool> in_omega0(space.size(), false);
    for (std::size_t a : desc.omega0) {
        in_omega0[a] = true;
        if (space.weight(a) > Rat(0)) {
            ++desc.kernel_dimension;
        }
    }
    for (std::size_t a = 0; a < space.size(); ++a) {
        if (!in_omega0[a] && space.weight(a) > Rat(0)) {
            positive_outside = true;
        }
    }
    desc.is_zero_operator = !positive_outside;
    return desc;
}

InjectivityVerdict is_injective(const AtomMap& T, const AtomicMeasureSpace& space) {
    InjectivityVerdict verdict;
    verdict.injective = kernel(T, space).kernel_dimension == 0;

    // Essential surjectivity: mu(Omega \ T(Omega)) = 0 with T taken modulo
    // null sets, so the image is that of the positive-weight atoms. The
    // literal set image would disagree with the kernel verdict whenever a
    // positive atom is reached only from null atoms.
    std::vector<bool> in_image(space.size(), false);
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (space.weight(x) > Rat(0)) {
            in_image[T(x)] = true;
        }
    }
    verdict.essentially_surjective = true;
    for (std::size_t a = 0; a < space.size(); ++a) {
        if (space.weight(a) > Rat(0) && !in_image[a]) {
            verdict.essentially_surjective = false;
        }
    }

    if (verdict.injective != verdict.essentially_surjective) {
        throw TheoremViolation("kernel-triviality and essential-surjectivity verdicts disagree");
    }
    return verdict;
}

AscentResult ascent(const AtomMap& T, const AtomicMeasureSpace& space, std::size_t max_k) {
    require_nonsingular(T, space);
    if (max_k == 0) {
        max_k = space.size();
    }
    AscentResult result;
    PushforwardMeasure mu_k = pushforward(T, space, 1);
    result.certificate.push_back(zero_set(rn_derivative(mu_k, space)));
    for (std::size_t k = 1; k <= max_k; ++k) {
        const PushforwardMeasure mu_k1 = pushforward(T, space, k + 1);
        result.certificate.push_back(zero_set(rn_derivative(mu_k1, space)));
        if (measures_equivalent(mu_k, mu_k1)) {
            result.ascent = k;
            result.stabilized_zero_set = result.certificate.back();
            return result;
        }
        mu_k = mu_k1;
    }
    if (max_k < space.size()) {
        throw ValidationError("ascent did not stabilize within the requested max_k");
    }
    // Unreachable on the finite carrier: the zero sets form an increasing
    // chain inside a finite atom set, so they stabilize within size() steps.
    throw TheoremViolation("ascent did not stabilize within the atom count");
}

AnalysisReport analyze(const AtomMap& T, const AtomicMeasureSpace& space) {
    AnalysisReport report;
    const auto ns = is_nonsingular(T, space);
    report.nonsingular = ns.nonsingular;
    report.singular_witness = ns.witness;
    report.measure_preserving = is_measure_preserving(T, space);
    report.expansive = is_expansive(T, space);
    if (!ns.nonsingular) {
        return report;
    }

    report.kernel = kernel(T, space);
    const auto verdict = is_injective(T, space);
    report.injective = verdict.injective;
    report.essentially_surjective = verdict.essentially_surjective;
    report.ascent = ascent(T, space);

    if (report.measure_preserving && report.ascent->ascent != 1) {
        throw TheoremViolation("measure-preserving T with ascent != 1");
    }
    if (report.expansive && report.ascent->ascent != 1) {
        throw TheoremViolation("expansive T with ascent != 1");
    }
    if (verdict.essentially_surjective && report.ascent->ascent != 1) {
        throw TheoremViolation("essentially surjective T with ascent != 1");
    }
    return report;
}

}  // namespace oplab
