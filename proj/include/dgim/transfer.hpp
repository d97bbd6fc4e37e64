#pragma once

#include "dgim/matrix.hpp"
#include "dgim/symbolic.hpp"

#include <optional>
#include <string>

namespace dgim {

// Exact transfer map (Lf)(x) = sum_{sigma y = x} f(y), evaluated by pulling
// back through the affine inverse branches. No gridding.
class TransferContext {
  public:
    explicit TransferContext(PLMap map) : map_(std::move(map)) {}
    const PLMap& map() const { return map_; }

    StepFunction apply(const StepFunction& f) const;                   // L f
    StepFunction apply_power(StepFunction f, int n) const;             // L^n f
    StepFunction pf_apply(const StepFunction& f, const Scalar& s) const;  // (1/s) L f

  private:
    PLMap map_;
};

enum class EqVerdict { equal, distinct, undetermined };

struct EquivalenceResult {
    EqVerdict verdict = EqVerdict::undetermined;
    int n = -1;               // witness for equal(n)
    std::string certificate;  // how the verdict was certified
};

// Optional certificates for dg_equivalent beyond bounded iteration.
struct DgHooks {
    // scaled state: nonzero on f - g certifies distinct
    std::optional<MeasureWeights> state_measure;
    // Markov route: partition points and incidence matrix (kernel stabilization)
    std::optional<std::pair<std::vector<Scalar>, IMat>> markov;
    // free cyclic module route: DG known isomorphic to Z[t,1/t] via p -> p(L)*1
    bool laurent_cyclic = false;
};

// Decides f ~ g (some L^n f = L^n g) in tri-state fashion; inputs must be
// integer-valued. equal verdicts carry the first witness n; distinct verdicts
// carry an exact certificate; otherwise undetermined.
EquivalenceResult dg_equivalent(const TransferContext& ctx, const StepFunction& f,
                                const StepFunction& g, int bound, const DgHooks* hooks = nullptr);

// Writes h = sum_j x_j L^j(1) with integer x_j, if possible with j <= maxdeg.
// Returns the coefficient polynomial.
std::optional<IntPoly> express_in_transfer_powers(const TransferContext& ctx,
                                                  const StepFunction& h, int maxdeg);

}  // namespace dgim
