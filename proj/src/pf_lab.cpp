#include "dgim/pf_lab.hpp"

namespace dgim {

PFSetup pf_setup(const PLMap& map, int bound) {
    std::optional<MarkovData> md;
    auto det = detect_markov(map, bound);
    if (std::holds_alternative<MarkovData>(det)) md = std::get<MarkovData>(det);
    ScalingMeasure sm = scaling_measure(map, md);
    if (sm.route == MeasureRoute::markov_perron) {
        // funnel through the uniform model so sup-norm claims stay exact;
        // eigenfunctions are reported in the uniformized coordinate
        PLMap uni = uniformize(map, sm.mu, sm.s);
        ExactDecomposition dec = exact_decomposition(uni, bound);
        if (!dec.certified) throw Error("pf: decomposition unavailable: " + dec.note);
        return {uni, MeasureWeights::lebesgue(), sm.s, dec, true};
    }
    ExactDecomposition dec = exact_decomposition(map, bound);
    if (!dec.certified) throw Error("pf: decomposition unavailable: " + dec.note);
    return {map, sm.mu, sm.s, dec, false};
}

namespace {

int part_of_support(const PFSetup& setup, const StepFunction& f) {
    IntervalSet supp = f.support();
    if (supp.empty()) return 0;
    for (int i = 0; i < setup.dec.N; ++i)
        if (setup.dec.parts[static_cast<size_t>(i)].contains(supp)) return i;
    throw Error("pf: support straddles decomposition parts");
}

}  // namespace

PFLimit pf_limit(const PFSetup& setup, const StepFunction& f, const Rat& tol, int maxiter) {
    PFLimit out;
    out.part = part_of_support(setup, f);
    out.report.N = setup.dec.N;
    TransferContext T(setup.map);
    Scalar sn_inv = setup.s.pow(setup.dec.N).inverse();
    StepFunction cur = f;
    Scalar tol_s{Rat(tol)};
    StepFunction absf = zip_with(f, StepFunction::constant(Scalar(0)),
                                 +[](const Scalar& a, const Scalar&) { return a.abs(); });
    Scalar var_scale = f.var() + absf.integrate(setup.mu);
    for (int it = 1; it <= maxiter; ++it) {
        StepFunction next = cur;
        for (int j = 0; j < setup.dec.N; ++j) next = T.apply(next);
        next = next * sn_inv;
        Scalar dist = StepFunction::sup_distance(next, cur);
        out.report.error_trace.push_back(dist.enclosure(tol / 8).hi);
        out.report.iterations = it;
        if (var_scale.sign() > 0) {
            Rat ratio = (next.var() / var_scale).enclosure(Rat(1, 1000)).hi;
            if (ratio > out.report.var_ratio_max) out.report.var_ratio_max = ratio;
        }
        cur = next;
        if (dist < tol_s) {
            out.report.converged = true;
            break;
        }
    }
    if (!out.report.converged) out.report.note = "maxiter exceeded; trace returned";
    out.limit = cur;
    return out;
}

PFReport pf_eigenfunctions(const PFSetup& setup, const Rat& tol, int maxiter) {
    PFReport rep;
    rep.N = setup.dec.N;
    rep.converged = true;
    for (int i = 0; i < setup.dec.N; ++i) {
        StepFunction chi = StepFunction::indicator(setup.dec.parts[static_cast<size_t>(i)]);
        Scalar mass = chi.integrate(setup.mu);
        if (mass.sign() <= 0) throw Error("pf: decomposition part has zero mass");
        PFLimit lim = pf_limit(setup, chi * mass.inverse(), tol, maxiter);
        rep.iterations = std::max(rep.iterations, lim.report.iterations);
        rep.converged = rep.converged && lim.report.converged;
        if (lim.report.var_ratio_max > rep.var_ratio_max)
            rep.var_ratio_max = lim.report.var_ratio_max;
        if (rep.error_trace.size() < lim.report.error_trace.size())
            rep.error_trace = lim.report.error_trace;
        // min on support
        Scalar mn(0);
        bool seen = false;
        for (size_t k = 0; k < lim.limit.values().size(); ++k) {
            const Scalar& v = lim.limit.values()[k];
            if (v.is_zero()) continue;
            if (!seen || v < mn) mn = v;
            seen = true;
        }
        rep.phi.push_back(lim.limit);
        rep.support_min.push_back(seen ? mn : Scalar(0));
    }
    return rep;
}

PFCycleVerdict pf_verify_cycle(const PFSetup& setup, const PFReport& report, const Rat& tol) {
    PFCycleVerdict v;
    TransferContext T(setup.map);
    Scalar tol_s{Rat(tol)};
    v.count_ok = static_cast<int>(report.phi.size()) == setup.dec.N;
    if (!v.count_ok)
        v.failures.push_back("eigenfunction count " + std::to_string(report.phi.size()) +
                             " != N = " + std::to_string(setup.dec.N));
    v.cycle_ok = true;
    for (size_t i = 0; i < report.phi.size(); ++i) {
        StepFunction lhs = T.pf_apply(report.phi[i], setup.s);
        const StepFunction& rhs = report.phi[(i + 1) % report.phi.size()];
        Scalar dist = StepFunction::sup_distance(lhs, rhs);
        if (!(dist < tol_s)) {
            v.cycle_ok = false;
            v.failures.push_back("||P phi_" + std::to_string(i) + " - phi_" +
                                 std::to_string((i + 1) % report.phi.size()) +
                                 "||_inf >= tol");
        }
    }
    v.support_positive = true;
    for (size_t i = 0; i < report.support_min.size(); ++i) {
        if (report.support_min[i].sign() <= 0) {
            v.support_positive = false;
            v.failures.push_back("phi_" + std::to_string(i) + " not positive on its support");
        }
        // support must match the decomposition part
        if (!(report.phi[i].support() == setup.dec.parts[i % setup.dec.parts.size()])) {
            v.support_positive = false;
            v.failures.push_back("supp phi_" + std::to_string(i) + " differs from part " +
                                 std::to_string(i));
        }
    }
    return v;
}

StepFunction pf_solve_markov(const PLMap& map, const MarkovData& md, int bound) {
    (void)bound;
    PerronData pd = perron_data(md.incidence, map.context());
    // P g = g on the cell basis means the coefficient row vector is a left
    // Perron eigenvector; normalize mu(g) = 1 against the scaling measure
    ScalingMeasure sm = scaling_measure(map, md);
    std::vector<Scalar> cells = md.partition;
    Scalar total(0);
    for (size_t i = 0; i + 1 < cells.size(); ++i)
        total += pd.left[i] * sm.mu.measure_interval(cells[i], cells[i + 1]);
    if (total.is_zero()) throw Error("pf solve: degenerate normalization");
    Scalar inv = total.inverse();
    std::vector<Scalar> vals(cells.size() - 1);
    for (size_t i = 0; i + 1 < cells.size(); ++i) vals[i] = pd.left[i] * inv;
    return StepFunction(cells, vals);
}

}  // namespace dgim
