#pragma once

#include "dgim/decomposition.hpp"

namespace dgim {

struct PFReport {
    int N = 1;
    std::vector<StepFunction> phi;   // one eigenfunction per decomposition part
    std::vector<Scalar> support_min; // min of phi_i on its support
    std::vector<Rat> error_trace;    // sup distances between successive P^N iterates
    int iterations = 0;
    bool converged = false;
    // measured over the run: max of var(P^k f) / (var f + |f|_1), finite for
    // every convergent run
    Rat var_ratio_max = Rat(0);
    std::string note;
};

struct PFSetup {
    PLMap map;
    MeasureWeights mu;
    Scalar s;
    ExactDecomposition dec;
    bool uniformized = false;  // non-uniform input was replaced by its uniform model
};

PFSetup pf_setup(const PLMap& map, int bound);

// Iterate P^N on f (supp f inside one part) until successive sup distance < tol.
// Returns the limit estimate of mu(f) * phi_i together with the trace.
struct PFLimit {
    StepFunction limit;
    PFReport report;
    int part = 0;
};

PFLimit pf_limit(const PFSetup& setup, const StepFunction& f, const Rat& tol, int maxiter);

// Run pf_limit on every part (f = chi_{X_i} / mu(X_i)) and collect the phi_i.
PFReport pf_eigenfunctions(const PFSetup& setup, const Rat& tol, int maxiter);

struct PFCycleVerdict {
    bool cycle_ok = false;        // ||P phi_i - phi_{i+1 mod N}||_inf < tol for all i
    bool count_ok = false;        // number of eigenfunctions equals N
    bool support_positive = false;  // min of phi_i on its support > 0
    std::vector<std::string> failures;
    bool pass() const { return cycle_ok && count_ok && support_positive; }
};

PFCycleVerdict pf_verify_cycle(const PFSetup& setup, const PFReport& report, const Rat& tol);

// Exact fixed-point solve on the Markov cell basis: the left Perron eigenvector
// normalized to mu(phi) = 1. Oracle for pf_limit.
StepFunction pf_solve_markov(const PLMap& map, const MarkovData& md, int bound);

}  // namespace dgim
