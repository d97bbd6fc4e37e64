#pragma once

#include "dgim/transfer.hpp"

#include <optional>
#include <variant>

namespace dgim {

// forward orbit of one seed value under the single-valued convention
// (right branch at interior partition points, left limit at 1)
struct OrbitRecord {
    Scalar seed;
    std::vector<Scalar> points;  // seed, tau(seed), ... up to first repeat or bound
    int preperiod = -1;          // k with tau^p = tau^k (repeat found), else -1
    int period = -1;             // p - k
    bool open = true;            // no repeat within bound
};

struct OrbitTable {
    std::vector<OrbitRecord> records;
    bool all_closed = true;
};

OrbitTable critical_orbits(const PLMap& map, int bound);

// Orbit value convention used for beta digits and orbit tables: at an interior
// partition point follow the right branch; at 1 take the left limit.
Scalar tau_point(const PLMap& map, const Scalar& x);

struct MarkovData {
    std::vector<Scalar> partition;  // B, ascending, includes 0 and 1
    IMat incidence;                 // A[i][j] = 1 iff sigma(E_i) covers E_j
    bool surjective = false;             // union of branch images is [0,1]
    bool eventually_surjective = false;  // image chain stabilizes at [0,1]
};

struct NotMarkovWithinBound {
    int bound;
};

std::variant<MarkovData, NotMarkovWithinBound> detect_markov(const PLMap& map, int bound);

struct Primitivity {
    bool irreducible = false;
    bool primitive = false;
    int period = 0;  // of the digraph, valid when irreducible
};

Primitivity primitivity_period(const IMat& A);

// cyclic classes C_0 -> C_1 -> ... -> C_{p-1} of an irreducible matrix with period p
std::vector<std::vector<int>> cyclic_classes(const IMat& A, int period);

struct PerronData {
    IntPoly charpoly;            // of A, monic
    Scalar s;                    // largest real root (Perron root)
    std::vector<Scalar> right;   // A m = s m, sum = 1
    std::vector<Scalar> left;    // l A = s l, normalized sum(l_i * m_i) = 1
};

// Requires A irreducible. ctx_hint: reuse the map's algebraic context when the
// Perron root lies in it (single-generator policy).
PerronData perron_data(const IMat& A, const ContextPtr& ctx_hint = nullptr);

enum class MeasureRoute { uniform_lebesgue, markov_perron };

struct ScalingMeasure {
    MeasureWeights mu;
    Scalar s;
    MeasureRoute route;
};

// Unique scaling measure of a transitive map (caller certifies transitivity):
// Lebesgue for uniformly PL maps, Perron masses on Markov cells otherwise.
ScalingMeasure scaling_measure(const PLMap& map,
                               const std::optional<MarkovData>& markov = std::nullopt);

// Conjugate T = h tau h^{-1} with h(x) = mu([0,x]); requires mu exact on the
// cell structure (Markov cells or uniform input). Output slopes are verified
// to be +-s.
PLMap uniformize(const PLMap& map, const MeasureWeights& mu, const Scalar& s);

struct EntropyEstimate {
    std::string method;
    std::optional<Scalar> s_exact;  // exp(h), when certified exactly
    Rat lo, hi;                     // rational bracket for exp(h)
    bool certified = false;
    int iterations = 0;
    std::string note;
};

EntropyEstimate entropy_markov(const PLMap& map, int bound);
// Collatz-Wielandt bracket [min Lf/f, max Lf/f] around exp(h), iterated until
// width <= tol. Certified when a scaling measure of full support exists
// (transitive maps).
EntropyEstimate entropy_power_iteration(const PLMap& map, const Rat& tol, int maxiter);
// exact nonempty-cylinder count at depth n; (1/n) log c_n is an upper bound
// estimate for h
struct CylinderCount {
    Int count;
    double estimate;  // (1/n) ln c_n
    int depth;
};
CylinderCount entropy_cylinder_count(const PLMap& map, int depth);

}  // namespace dgim
