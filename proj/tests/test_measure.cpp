#include <doctest.h>

#include <algorithm>
#include <random>

#include "oplab/measure.hpp"
#include "oplab/errors.hpp"

using namespace oplab;

namespace {

AtomicMeasureSpace unit_space(std::size_t n) {
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < n; ++i) {
        atoms.push_back("a" + std::to_string(i));
    }
    return AtomicMeasureSpace(std::move(atoms), std::vector<Rat>(n, Rat(1)));
}

// 1 -> 2 -> 3 -> 3 on unit weights, the running example.
struct ShiftToSink {
    AtomicMeasureSpace space = unit_space(3);
    AtomMap map{{1, 2, 2}, 3};
};

}  // namespace

TEST_CASE("space construction validates") {
    CHECK_THROWS_AS(AtomicMeasureSpace({"a", "a"}, {Rat(1), Rat(1)}), ValidationError);
    CHECK_THROWS_AS(AtomicMeasureSpace({"a", "b"}, {Rat(0), Rat(0)}), ValidationError);
    CHECK_THROWS_AS(AtomicMeasureSpace({"a"}, {Rat(-1)}), ValidationError);
    CHECK_THROWS_AS(AtomicMeasureSpace({"a"}, {Rat(1), Rat(1)}), ValidationError);
}

TEST_CASE("nonsingularity") {
    const auto space3 = unit_space(3);
    const AtomMap identity{{0, 1, 2}, 3};
    CHECK(is_nonsingular(identity, space3).nonsingular);

    // atoms (a,b), weights (1,0), T: a->b, b->b
    AtomicMeasureSpace space({"a", "b"}, {Rat(1), Rat(0)});
    const AtomMap to_null{{1, 1}, 2};
    const auto result = is_nonsingular(to_null, space);
    CHECK_FALSE(result.nonsingular);
    CHECK(result.witness->first == 0);
    CHECK(result.witness->second == 1);

    // no null sets at all
    const AtomMap collapse{{0, 0, 0}, 3};
    CHECK(is_nonsingular(collapse, space3).nonsingular);
}

TEST_CASE("pushforward hand values") {
    ShiftToSink s;
    const auto mu1 = pushforward(s.map, s.space, 1);
    CHECK(mu1.weights == std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
    const auto mu2 = pushforward(s.map, s.space, 2);
    CHECK(mu2.weights == std::vector<Rat>{Rat(0), Rat(0), Rat(3)});

    const AtomMap identity{{0, 1, 2}, 3};
    for (std::size_t k : {1, 2, 5}) {
        CHECK(pushforward(identity, s.space, k).weights == s.space.weights());
    }
}

TEST_CASE("rn derivative hand values") {
    // atoms (a,b,c), unit weights, T: a->b, b->b, c->c -> f_T = (0, 2, 1)
    const auto space = unit_space(3);
    const AtomMap map{{1, 1, 2}, 3};
    const auto d = rn_derivative(pushforward(map, space, 1), space);
    CHECK(d.values == std::vector<Rat>{Rat(0), Rat(2), Rat(1)});
    CHECK(zero_set(d) == std::vector<std::size_t>{0});

    const AtomMap identity{{0, 1, 2}, 3};
    const auto d_id = rn_derivative(pushforward(identity, space, 1), space);
    CHECK(d_id.values == std::vector<Rat>(3, Rat(1)));
    CHECK(zero_set(d_id).empty());

    // measure-preserving permutation of equal weights
    const AtomMap cycle{{1, 2, 0}, 3};
    CHECK(rn_derivative(pushforward(cycle, space, 1), space).values ==
          std::vector<Rat>(3, Rat(1)));

    // singular T: mass flows into a null atom
    AtomicMeasureSpace with_null({"a", "b"}, {Rat(1), Rat(0)});
    const AtomMap to_null{{1, 1}, 2};
    CHECK_THROWS_AS(rn_derivative(pushforward(to_null, with_null, 1), with_null),
                    AbsoluteContinuityViolated);
}

TEST_CASE("measure equivalence and chain factors") {
    ShiftToSink s;
    const auto mu1 = pushforward(s.map, s.space, 1);
    const auto mu2 = pushforward(s.map, s.space, 2);
    const auto mu3 = pushforward(s.map, s.space, 3);
    CHECK_FALSE(measures_equivalent(mu1, mu2));
    CHECK(measures_equivalent(mu2, mu3));
    CHECK(measures_equivalent(mu1, mu1));

    CHECK_THROWS_AS(rn_chain_factor(mu1, mu2, s.space), NotEquivalent);

    // equivalent pair (0,2,1) vs (0,1,2) -> factors (1, 2, 1/2)
    const PushforwardMeasure a{1, {Rat(0), Rat(2), Rat(1)}};
    const PushforwardMeasure b{2, {Rat(0), Rat(1), Rat(2)}};
    const auto factors = rn_chain_factor(a, b, s.space);
    CHECK(factors == std::vector<Rat>{Rat(1), Rat(2), Rat(1, 2)});
    // f_{T^k} = factor * f_{T^{k+1}} atomwise
    const auto fk = rn_derivative(a, s.space);
    const auto fk1 = rn_derivative(b, s.space);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(fk.values[i] == factors[i] * fk1.values[i]);
    }

    CHECK(rn_chain_factor(a, a, s.space) == std::vector<Rat>(3, Rat(1)));

    const PushforwardMeasure scaled{2, {Rat(0), Rat(6), Rat(3)}};
    CHECK(rn_chain_factor(a, scaled, s.space) ==
          std::vector<Rat>{Rat(1), Rat(1, 3), Rat(1, 3)});
}

TEST_CASE("measure preserving and expansive") {
    const auto space = unit_space(3);
    const AtomMap cycle{{1, 2, 0}, 3};
    CHECK(is_measure_preserving(cycle, space));
    CHECK(is_expansive(cycle, space));

    ShiftToSink s;
    CHECK_FALSE(is_measure_preserving(s.map, s.space));

    AtomicMeasureSpace two({"a", "b"}, {Rat(1), Rat(1)});
    const AtomMap both_to_a{{0, 0}, 2};
    CHECK_FALSE(is_expansive(both_to_a, two));  // fails at atom b

    AtomicMeasureSpace uneven({"a", "b"}, {Rat(1), Rat(2)});
    const AtomMap to_b{{1, 1}, 2};
    CHECK_FALSE(is_expansive(to_b, uneven));  // fails at atom a
}

TEST_CASE("pushforward properties on random instances") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 6;
        std::vector<std::string> atoms;
        std::vector<Rat> weights;
        std::vector<std::size_t> mapping;
        for (std::size_t i = 0; i < n; ++i) {
            atoms.push_back("a" + std::to_string(i));
            weights.push_back(Rat(static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3)));
            mapping.push_back(rng() % n);
        }
        if (std::all_of(weights.begin(), weights.end(),
                        [](const Rat& w) { return w == Rat(0); })) {
            continue;
        }
        const AtomicMeasureSpace space(atoms, weights);
        const AtomMap map(mapping, n);

        // Mass conservation, exact.
        for (std::size_t k = 1; k <= 3; ++k) {
            Rat total(0);
            for (const auto& w : pushforward(map, space, k).weights) {
                total += w;
            }
            CHECK(total == space.total_mass());
        }

        // Semigroup: (T^j)^{-k} = T^{-jk}.
        const AtomMap t2 = map.iterate(2);
        CHECK(pushforward(t2, space, 1).weights == pushforward(map, space, 2).weights);
        CHECK(pushforward(t2, space, 2).weights == pushforward(map, space, 4).weights);
        CHECK(pushforward(map.iterate(3), space, 1).weights ==
              pushforward(map, space, 3).weights);

        if (!is_nonsingular(map, space).nonsingular) {
            continue;
        }

        // Zero-set chain is monotone under nonsingularity.
        auto prev_zero = zero_set(rn_derivative(pushforward(map, space, 1), space));
        for (std::size_t k = 2; k <= n + 1; ++k) {
            const auto next_zero = zero_set(rn_derivative(pushforward(map, space, k), space));
            CHECK(std::includes(next_zero.begin(), next_zero.end(), prev_zero.begin(),
                                prev_zero.end()));
            prev_zero = next_zero;
        }

        // RN reconstruction over random atom subsets, exact.
        const auto mu2 = pushforward(map, space, 2);
        const auto d2 = rn_derivative(mu2, space);
        for (int subset_trial = 0; subset_trial < 5; ++subset_trial) {
            const std::size_t mask = rng() % (std::size_t{1} << n);
            Rat direct(0);
            Rat reconstructed(0);
            for (std::size_t a = 0; a < n; ++a) {
                if ((mask >> a) & 1) {
                    direct += mu2.weights[a];
                    reconstructed += d2.values[a] * space.weight(a);
                }
            }
            CHECK(direct == reconstructed);
        }
    }
}
