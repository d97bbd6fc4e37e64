#pragma once

#include "dgim/markov.hpp"

namespace dgim {

enum class Verdict3 { yes, no, undetermined };

struct TransitivityResult {
    Verdict3 verdict = Verdict3::undetermined;
    // proper closed invariant union with interior complement, when not transitive
    IntervalSet witness;
    std::string note;
};

TransitivityResult transitivity_check(const PLMap& map, int bound);

struct ExactDecomposition {
    int N = 1;
    std::vector<IntervalSet> parts;  // K_1 ... K_N, tau(int K_i) = int K_{i+1 mod N}
    bool certified = false;
    std::string note;
};

// Requires map transitive and not essentially injective. Markov route when
// available; otherwise exact interval-chain iteration per residue class.
ExactDecomposition exact_decomposition(const PLMap& map, int bound);

struct ExactnessResult {
    Verdict3 verdict = Verdict3::undetermined;  // yes = topologically exact
    int N = 1;                                  // decomposition size when not exact
    std::string note;
};

ExactnessResult exactness_check(const PLMap& map, int bound);

}  // namespace dgim
