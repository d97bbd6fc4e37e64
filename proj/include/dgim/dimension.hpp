#pragma once

#include "dgim/decomposition.hpp"

#include <memory>
#include <variant>

namespace dgim {

// Element [v, n] of a stationary inductive limit Z^q --A--> Z^q.
struct GAElement {
    std::vector<Int> v;
    int n = 0;
};

// Laurent polynomial p(t) * t^low with integer coefficients.
struct LaurentPoly {
    IntPoly p;
    int low = 0;
    bool is_zero() const { return p.is_zero(); }
    Scalar eval(const Scalar& s) const;
    std::string str() const;
};

enum class OrderMode {
    strict_state,       // topologically exact piece: strict order from the unique state
    bounded_iteration,  // no transitivity certificate: v A^k >= 0 search up to K
};

// Stationary-limit presentation of the dimension triple. For Markov maps the
// basis is the partition indicators and A the incidence matrix; for
// beta-modules the basis is (I, LI, ..., L^{q-1} I) and A the verified matrix
// of L. weights are the state values of the basis, order_unit the coordinates
// of [chi_X].
struct StationaryPresentation {
    IMat A;
    int q = 0;
    std::vector<Scalar> weights;
    Scalar s;
    IntPoly charpoly;
    bool primitive = false;
    int period = 1;
    std::vector<Int> order_unit;
    std::string basis;  // "partition_indicators" | "transfer_powers"
};

struct LaurentCyclicPresentation {
    Scalar s;
    bool generic_s = false;  // declared transcendental
    std::string generator = "I(0,1)";
};

struct DimensionTriple;

struct DirectSumPresentation {
    int N = 1;
    std::vector<std::shared_ptr<DimensionTriple>> components;  // cycled by L_*
};

struct DimensionTriple {
    std::variant<StationaryPresentation, LaurentCyclicPresentation, DirectSumPresentation> data;

    const StationaryPresentation* stationary() const {
        return std::get_if<StationaryPresentation>(&data);
    }
    const LaurentCyclicPresentation* laurent() const {
        return std::get_if<LaurentCyclicPresentation>(&data);
    }
    const DirectSumPresentation* direct_sum() const {
        return std::get_if<DirectSumPresentation>(&data);
    }
};

// ---- stationary-limit operations ----

// decided at k = q: kernel chains of integer matrices stabilize within q steps
bool ga_equal(const StationaryPresentation& T, const GAElement& x, const GAElement& y);
bool ga_is_zero(const StationaryPresentation& T, const GAElement& x);
Scalar ga_state(const StationaryPresentation& T, const GAElement& x);

enum class Positivity { positive, zero, negative, incomparable, undetermined };
Positivity ga_positive(const StationaryPresentation& T, const GAElement& x,
                       OrderMode mode = OrderMode::strict_state, int iteration_bound = 50);

// ---- Laurent-cyclic operations ----

Scalar laurent_state(const LaurentCyclicPresentation& T, const LaurentPoly& p);
Positivity laurent_positive(const LaurentCyclicPresentation& T, const LaurentPoly& p);

// ---- presentations ----

DimensionTriple markov_presentation(const PLMap& map, int bound);

struct BetaPresentation {
    IntPoly minimal_poly;         // m(t) for L on M = Z[t] I(0,1)
    std::optional<IMat> B;        // matrix of L in basis (I, LI, ..., L^{q-1} I)
    std::vector<Scalar> state_basis;  // state of basis vectors: beta^i
    bool fallback = false;        // orbit of 1 open within bound
    int orbit_case = 0;           // 1: tau(1) = 1; 2: periodic tail off 0; 3: orbit lands on 0
    std::vector<Int> digits;      // itinerary of 1
    int k = -1, p = -1;           // tau^p 1 = tau^k 1
    DimensionTriple triple;
};

BetaPresentation beta_presentation(const Scalar& beta, int bound);

// orbit condition for DG(tau) ~ Z[t,1/t]: some endpoint has an open orbit
// while every other partition point maps into the partition
bool cyclic_detect(const PLMap& map, int bound);

struct CanonicalGenerators {
    std::vector<StepFunction> j1;  // indicators of partition intervals
    std::vector<StepFunction> j2;  // indicators of jump intervals
};

CanonicalGenerators canonical_generators(const PLMap& map);

// BMT criterion: charpoly with the largest power of t divided out, reducible
// over Q iff infinitesimals exist (primitive case)
bool infinitesimal_exists(const IntPoly& charpoly);

// ---- state range ----

enum class RangeBackend { rational_denominator, unit_lattice, generic_symbolic, undecided };

struct SubgroupOfR {
    Scalar s;
    std::vector<Scalar> generators;
    RangeBackend backend = RangeBackend::undecided;
    // rational backend: subgroup = g * Z[1/N]
    Rat rational_g;
    Int rational_N;
    // lattice backend: Z-basis vectors in the power basis of Q(s), row HNF
    std::vector<std::vector<Rat>> lattice_basis;

    bool contains(const Scalar& x) const;  // throws for undecided backend
    std::string describe() const;
};

SubgroupOfR state_range(const Scalar& s, const std::vector<Scalar>& weights, bool generic_s);

// ---- map-level presentations & comparison ----

DimensionTriple unimodal_presentation(const PLMap& map, int bound, bool generic_s);
DimensionTriple direct_sum_decompose(const PLMap& map, const ExactDecomposition& dec, int bound);

enum class ConjugacyVerdict { conjugate_increasing, not_conjugate, undetermined };

struct ConjugacyResult {
    ConjugacyVerdict verdict = ConjugacyVerdict::undetermined;
    std::string reason;
};

ConjugacyResult conjugacy_compare(const PLMap& a, const PLMap& b, int bound);

}  // namespace dgim
