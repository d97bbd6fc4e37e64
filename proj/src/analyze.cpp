#include "dgim/analyze.hpp"

#include <cmath>

namespace dgim {

namespace {

Json imat_to_json(const IMat& A) {
    Json rows = Json::array();
    for (size_t i = 0; i < A.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < A.cols(); ++j) {
            if (A[i][j].fits_slong_p()) row.push_back(A[i][j].get_si());
            else row.push_back(A[i][j].get_str());
        }
        rows.push_back(row);
    }
    return rows;
}

const char* verdict3_name(Verdict3 v) {
    switch (v) {
        case Verdict3::yes: return "yes";
        case Verdict3::no: return "no";
        case Verdict3::undetermined: return "undetermined";
    }
    return "undetermined";
}

}  // namespace

Json markov_to_json(const PLMap& map, const MarkovData& md) {
    Json out = Json::object();
    Json part = Json::array();
    for (const auto& p : md.partition) part.push_back(scalar_to_json(p));
    out["partition"] = part;
    out["incidence"] = imat_to_json(md.incidence);
    Primitivity pr = primitivity_period(md.incidence);
    out["irreducible"] = pr.irreducible;
    out["primitive"] = pr.primitive;
    out["period"] = pr.period;
    out["surjective"] = md.surjective;
    out["eventually_surjective"] = md.eventually_surjective;
    if (pr.irreducible) {
        PerronData pd = perron_data(md.incidence, map.context());
        out["charpoly"] = intpoly_to_json(pd.charpoly);
        out["s"] = scalar_to_json(pd.s);
        Json measure = Json::array();
        for (const auto& w : pd.right) measure.push_back(scalar_to_json(w));
        out["measure"] = measure;
    }
    return out;
}

Json decomposition_to_json(const ExactDecomposition& dec) {
    Json out = Json::object();
    out["N"] = dec.N;
    Json parts = Json::array();
    for (const auto& p : dec.parts) parts.push_back(interval_set_to_json(p));
    out["parts"] = parts;
    out["certified"] = dec.certified;
    out["note"] = dec.note;
    return out;
}

Json entropy_to_json(const EntropyEstimate& e) {
    Json out = Json::object();
    out["method"] = e.method;
    if (e.s_exact) out["s"] = scalar_to_json(*e.s_exact);
    out["bracket"] = Json::array({e.lo.get_str(), e.hi.get_str()});
    Rat width = e.hi - e.lo;
    out["bracket_width"] = width.get_str();
    if (e.hi > 0) {
        double llo = std::log(e.lo.get_d()), lhi = std::log(e.hi.get_d());
        out["entropy_approx"] = Json::array({llo, lhi});
    }
    out["certified"] = e.certified;
    out["iterations"] = e.iterations;
    if (!e.note.empty()) out["note"] = e.note;
    return out;
}

Json state_range_to_json(const SubgroupOfR& r) {
    Json out = Json::object();
    out["s"] = scalar_to_json(r.s);
    Json gens = Json::array();
    for (const auto& g : r.generators) gens.push_back(scalar_to_json(g));
    out["generators"] = gens;
    switch (r.backend) {
        case RangeBackend::rational_denominator:
            out["backend"] = "rational_denominator";
            out["g"] = r.rational_g.get_str();
            out["N"] = r.rational_N.get_str();
            break;
        case RangeBackend::unit_lattice: {
            out["backend"] = "unit_lattice";
            Json basis = Json::array();
            for (const auto& row : r.lattice_basis) {
                Json jr = Json::array();
                for (const auto& v : row) jr.push_back(v.get_str());
                basis.push_back(jr);
            }
            out["lattice_basis"] = basis;
            break;
        }
        case RangeBackend::generic_symbolic:
            out["backend"] = "generic_symbolic";
            break;
        case RangeBackend::undecided:
            out["backend"] = "undecided";
            break;
    }
    out["describe"] = r.describe();
    return out;
}

Json presentation_to_json(const DimensionTriple& t, bool generic_s) {
    Json out = Json::object();
    if (const auto* st = t.stationary()) {
        out["kind"] = "markov_limit";
        out["A"] = imat_to_json(st->A);
        out["q"] = st->q;
        out["s"] = scalar_to_json(st->s);
        Json w = Json::array();
        for (const auto& x : st->weights) w.push_back(scalar_to_json(x));
        out["weights"] = w;
        out["charpoly"] = intpoly_to_json(st->charpoly);
        out["basis"] = st->basis;
        out["primitive"] = st->primitive;
        out["period"] = st->period;
        if (st->primitive) out["infinitesimals"] = infinitesimal_exists(st->charpoly);
    } else if (const auto* lc = t.laurent()) {
        out["kind"] = "laurent_cyclic";
        out["s"] = scalar_to_json(lc->s);
        out["order"] = "strict_eval";
        out["generator"] = lc->generator;
        out["generic_s"] = lc->generic_s;
        // eval at s kills some nonzero Laurent polynomial iff s is algebraic
        out["infinitesimals"] = generic_s ? Json(false)
                                          : Json(lc->s.is_rational() || lc->s.context() != nullptr);
    } else if (const auto* ds = t.direct_sum()) {
        out["kind"] = "direct_sum";
        out["N"] = ds->N;
        Json comps = Json::array();
        for (const auto& c : ds->components) comps.push_back(presentation_to_json(*c, generic_s));
        out["components"] = comps;
        out["cycle"] = "i -> i+1 mod N under L_*";
    }
    return out;
}

Json pf_report_to_json(const PFReport& rep, const PFCycleVerdict* verdict) {
    Json out = Json::object();
    out["N"] = rep.N;
    Json phis = Json::array();
    for (const auto& f : rep.phi) phis.push_back(step_to_json(f));
    out["phi"] = phis;
    Json mins = Json::array();
    for (const auto& m : rep.support_min) mins.push_back(scalar_to_json(m));
    out["support_min"] = mins;
    Json trace = Json::array();
    for (const auto& d : rep.error_trace) trace.push_back(d.get_str());
    out["error_trace"] = trace;
    out["iterations"] = rep.iterations;
    out["converged"] = rep.converged;
    out["var_ratio_max"] = rep.var_ratio_max.get_str();
    if (!rep.note.empty()) out["note"] = rep.note;
    if (verdict) {
        Json v = Json::object();
        v["cycle_ok"] = verdict->cycle_ok;
        v["count_ok"] = verdict->count_ok;
        v["support_positive"] = verdict->support_positive;
        v["pass"] = verdict->pass();
        Json fails = Json::array();
        for (const auto& f : verdict->failures) fails.push_back(f);
        v["failures"] = fails;
        out["cycle_verdict"] = v;
    }
    return out;
}

namespace {

struct PipelineState {
    std::optional<MarkovData> markov;
    std::optional<TransitivityResult> transitivity;
    std::optional<ExactDecomposition> decomposition;
    std::optional<ScalingMeasure> measure;
    std::optional<DimensionTriple> presentation;
    std::string presentation_route;
    std::string presentation_note;
};

PipelineState run_pipeline(const ParsedMap& pm, const AnalysisOptions& opt) {
    PipelineState st;
    auto det = detect_markov(pm.map, opt.bound);
    if (std::holds_alternative<MarkovData>(det)) st.markov = std::get<MarkovData>(det);
    st.transitivity = transitivity_check(pm.map, opt.bound);
    Classification cls = pm.map.classify();
    try {
        st.measure = scaling_measure(pm.map, st.markov);
    } catch (const Error&) {
    }
    if (st.transitivity->verdict == Verdict3::yes && !cls.essentially_injective) {
        try {
            st.decomposition = exact_decomposition(pm.map, opt.bound);
        } catch (const Error&) {
        }
    }
    // presentation route
    try {
        if (pm.kind == "beta") {
            Scalar b = *pm.map.uniform_slope();
            BetaPresentation bp = beta_presentation(b, opt.bound);
            st.presentation = bp.triple;
            st.presentation_route = bp.fallback ? "beta_fallback_laurent" : "beta_module";
        } else if (pm.map.is_unimodal() && st.transitivity->verdict == Verdict3::yes) {
            st.presentation = unimodal_presentation(pm.map, opt.bound, opt.generic_s);
            st.presentation_route = "unimodal";
        } else if (st.markov && st.transitivity->verdict == Verdict3::yes) {
            if (st.decomposition && st.decomposition->N > 1) {
                st.presentation = direct_sum_decompose(pm.map, *st.decomposition, opt.bound);
                st.presentation_route = "direct_sum";
            } else {
                st.presentation = markov_presentation(pm.map, opt.bound);
                st.presentation_route = "markov";
            }
        } else if (st.transitivity->verdict == Verdict3::yes && st.measure &&
                   cyclic_detect(pm.map, opt.bound)) {
            LaurentCyclicPresentation lc;
            lc.s = st.measure->s;
            lc.generic_s = opt.generic_s;
            st.presentation = DimensionTriple{lc};
            st.presentation_route = "cyclic_laurent";
        } else {
            st.presentation_note = "no presentation route applies within the bound";
        }
    } catch (const Error& e) {
        st.presentation_note = e.what();
    }
    return st;
}

}  // namespace

Json analyze(const ParsedMap& pm, const AnalysisOptions& opt) {
    Json out = Json::object();
    out["map"] = pm.echo;
    Classification cls = pm.map.classify();
    Json jc = Json::object();
    jc["continuous"] = cls.continuous;
    jc["surjective_hat"] = cls.surjective_hat;
    jc["essentially_injective"] = cls.essentially_injective;
    out["classification"] = jc;

    PipelineState st = run_pipeline(pm, opt);

    if (st.markov) out["markov"] = markov_to_json(pm.map, *st.markov);
    else out["markov"] = Json{{"status", "NotMarkovWithinBound"}, {"bound", opt.bound}};

    Json tr = Json::object();
    tr["verdict"] = verdict3_name(st.transitivity->verdict);
    tr["note"] = st.transitivity->note;
    if (st.transitivity->verdict == Verdict3::no)
        tr["witness"] = interval_set_to_json(st.transitivity->witness);
    tr["bound"] = opt.bound;
    out["transitivity"] = tr;

    Json ent = Json::array();
    for (const auto& method : opt.entropy_methods) {
        if (method == "markov_exact") {
            if (st.markov) ent.push_back(entropy_to_json(entropy_markov(pm.map, opt.bound)));
        } else if (method == "power_iteration") {
            if (st.transitivity->verdict == Verdict3::no) {
                // the ratio bracket converges through mixing; pointless here
                ent.push_back(Json{{"method", "power_iteration"},
                                   {"status", "skipped"},
                                   {"note", "map certified not transitive; request the entropy "
                                            "subcommand explicitly for a bracket"}});
            } else {
                ent.push_back(
                    entropy_to_json(entropy_power_iteration(pm.map, opt.tol, opt.maxiter)));
            }
        } else if (method == "cylinder_count") {
            CylinderCount cc = entropy_cylinder_count(pm.map, opt.cylinder_depth);
            Json e = Json::object();
            e["method"] = "cylinder_count";
            e["depth"] = cc.depth;
            e["count"] = cc.count.get_str();
            e["estimate"] = cc.estimate;
            e["note"] = "(1/n) ln c_n; upper-bound estimator";
            ent.push_back(e);
        }
    }
    out["entropy"] = ent;

    if (st.measure) {
        Json m = Json::object();
        m["route"] = st.measure->route == MeasureRoute::uniform_lebesgue ? "uniform_lebesgue"
                                                                         : "markov_perron";
        m["s"] = scalar_to_json(st.measure->s);
        m["weights"] = measure_to_json(st.measure->mu);
        out["scaling_measure"] = m;
    } else {
        out["scaling_measure"] = Json{{"status", "unavailable"}};
    }

    if (st.decomposition) out["decomposition"] = decomposition_to_json(*st.decomposition);

    if (st.presentation) {
        out["dimension_triple"] = presentation_to_json(*st.presentation, opt.generic_s);
        out["dimension_route"] = st.presentation_route;
        // state range from the presentation weights (or Lebesgue lengths)
        if (const auto* stp = st.presentation->stationary()) {
            out["state_range"] = state_range_to_json(state_range(stp->s, stp->weights, opt.generic_s));
        } else if (st.presentation->laurent()) {
            const auto* lc = st.presentation->laurent();
            out["state_range"] =
                state_range_to_json(state_range(lc->s, {Scalar(1)}, opt.generic_s));
        }
    } else {
        out["dimension_triple"] = Json{{"status", "undetermined"}, {"note", st.presentation_note}};
        // the quotient by infinitesimals is still computable for continuous
        // mixing uniformly-PL maps: the state range of the interval lengths
        if (auto s = pm.map.uniform_slope();
            s && pm.map.is_continuous() && st.decomposition && st.decomposition->N == 1) {
            std::vector<Scalar> lengths;
            const auto& bk = pm.map.breakpoints();
            for (size_t i = 0; i + 1 < bk.size(); ++i) lengths.push_back(bk[i + 1] - bk[i]);
            out["state_range"] = state_range_to_json(state_range(*s, lengths, opt.generic_s));
            out["state_range"]["describes"] = "quotient by infinitesimals (interval lengths)";
        }
    }

    if (opt.want_pf) {
        try {
            PFSetup setup = pf_setup(pm.map, opt.bound);
            PFReport rep = pf_eigenfunctions(setup, opt.tol, opt.maxiter);
            PFCycleVerdict v = pf_verify_cycle(setup, rep, opt.tol);
            out["pf"] = pf_report_to_json(rep, &v);
            if (setup.uniformized) out["pf"]["coordinates"] = "uniformized";
        } catch (const Error& e) {
            out["pf"] = Json{{"status", "unavailable"}, {"note", e.what()}};
        }
    }
    return out;
}

Json entropy_report(const ParsedMap& pm, const AnalysisOptions& opt) {
    Json out = Json::object();
    out["map"] = pm.echo;
    Json ent = Json::array();
    for (const auto& method : opt.entropy_methods) {
        if (method == "markov_exact") {
            ent.push_back(entropy_to_json(entropy_markov(pm.map, opt.bound)));
        } else if (method == "power_iteration") {
            ent.push_back(entropy_to_json(entropy_power_iteration(pm.map, opt.tol, opt.maxiter)));
        } else if (method == "cylinder_count") {
            CylinderCount cc = entropy_cylinder_count(pm.map, opt.cylinder_depth);
            Json e = Json::object();
            e["method"] = "cylinder_count";
            e["depth"] = cc.depth;
            e["count"] = cc.count.get_str();
            e["estimate"] = cc.estimate;
            ent.push_back(e);
        } else {
            throw Error("unknown entropy method '" + method + "'");
        }
    }
    out["entropy"] = ent;
    return out;
}

Json markov_report(const ParsedMap& pm, const AnalysisOptions& opt) {
    Json out = Json::object();
    out["map"] = pm.echo;
    auto det = detect_markov(pm.map, opt.bound);
    if (std::holds_alternative<MarkovData>(det))
        out["markov"] = markov_to_json(pm.map, std::get<MarkovData>(det));
    else
        out["markov"] = Json{{"status", "NotMarkovWithinBound"}, {"bound", opt.bound}};
    OrbitTable tbl = critical_orbits(pm.map, opt.bound);
    Json orbits = Json::array();
    for (const auto& rec : tbl.records) {
        Json o = Json::object();
        o["seed"] = scalar_to_json(rec.seed);
        Json pts = Json::array();
        for (const auto& p : rec.points) pts.push_back(scalar_to_json(p));
        o["points"] = pts;
        o["open"] = rec.open;
        if (!rec.open) {
            o["preperiod"] = rec.preperiod;
            o["period"] = rec.period;
        }
        orbits.push_back(o);
    }
    out["critical_orbits"] = orbits;
    return out;
}

Json dimension_report(const ParsedMap& pm, const AnalysisOptions& opt) {
    Json out = Json::object();
    out["map"] = pm.echo;
    PipelineState st = run_pipeline(pm, opt);
    if (pm.kind == "beta") {
        Scalar b = *pm.map.uniform_slope();
        BetaPresentation bp = beta_presentation(b, opt.bound);
        Json jb = Json::object();
        jb["minimal_poly"] = intpoly_to_json(bp.minimal_poly);
        if (bp.B) jb["B"] = imat_to_json(*bp.B);
        Json sb = Json::array();
        for (const auto& w : bp.state_basis) sb.push_back(scalar_to_json(w));
        jb["state_basis"] = sb;
        jb["fallback"] = bp.fallback;
        jb["case"] = bp.orbit_case;
        Json digs = Json::array();
        for (const auto& d : bp.digits) digs.push_back(d.get_si());
        jb["digits"] = digs;
        if (bp.k >= 0) {
            jb["k"] = bp.k;
            jb["p"] = bp.p;
        }
        jb["cyclic_detect"] = cyclic_detect(pm.map, opt.bound);
        out["beta_presentation"] = jb;
    }
    if (st.presentation) {
        out["dimension_triple"] = presentation_to_json(*st.presentation, opt.generic_s);
        out["dimension_route"] = st.presentation_route;
        if (const auto* stp = st.presentation->stationary())
            out["state_range"] = state_range_to_json(state_range(stp->s, stp->weights, opt.generic_s));
        else if (const auto* lc = st.presentation->laurent())
            out["state_range"] = state_range_to_json(state_range(lc->s, {Scalar(1)}, opt.generic_s));
    } else {
        out["dimension_triple"] = Json{{"status", "undetermined"}, {"note", st.presentation_note}};
    }
    try {
        CanonicalGenerators gens = canonical_generators(pm.map);
        Json j1 = Json::array(), j2 = Json::array();
        for (const auto& f : gens.j1) j1.push_back(step_to_json(f));
        for (const auto& f : gens.j2) j2.push_back(step_to_json(f));
        out["canonical_generators"] = Json{{"J1", j1}, {"J2", j2}};
    } catch (const Error& e) {
        out["canonical_generators"] = Json{{"status", "unavailable"}, {"note", e.what()}};
    }
    return out;
}

Json decompose_report(const ParsedMap& pm, const AnalysisOptions& opt) {
    Json out = Json::object();
    out["map"] = pm.echo;
    Classification cls = pm.map.classify();
    if (cls.essentially_injective)
        throw UnsupportedClass("decomposition is undefined for essentially injective maps");
    TransitivityResult tr = transitivity_check(pm.map, opt.bound);
    Json jt = Json::object();
    jt["verdict"] = verdict3_name(tr.verdict);
    jt["note"] = tr.note;
    if (tr.verdict == Verdict3::no) jt["witness"] = interval_set_to_json(tr.witness);
    out["transitivity"] = jt;
    if (tr.verdict == Verdict3::yes) {
        ExactDecomposition dec = exact_decomposition(pm.map, opt.bound);
        out["decomposition"] = decomposition_to_json(dec);
        ExactnessResult ex = exactness_check(pm.map, opt.bound);
        out["exactness"] = Json{{"verdict", verdict3_name(ex.verdict)}, {"N", ex.N}};
    }
    return out;
}

Json pf_report(const ParsedMap& pm, const AnalysisOptions& opt) {
    Json out = Json::object();
    out["map"] = pm.echo;
    PFSetup setup = pf_setup(pm.map, opt.bound);
    PFReport rep = pf_eigenfunctions(setup, opt.tol, opt.maxiter);
    PFCycleVerdict v = pf_verify_cycle(setup, rep, opt.tol);
    out["pf"] = pf_report_to_json(rep, &v);
    if (setup.uniformized) out["pf"]["coordinates"] = "uniformized";
    return out;
}

Json compare_report(const ParsedMap& a, const ParsedMap& b, const AnalysisOptions& opt) {
    Json out = Json::object();
    out["map1"] = a.echo;
    out["map2"] = b.echo;
    ConjugacyResult r = conjugacy_compare(a.map, b.map, opt.bound);
    const char* names[] = {"conjugate_increasing", "not_conjugate", "undetermined"};
    out["increasing"] = Json{{"verdict", names[static_cast<int>(r.verdict)]}, {"reason", r.reason}};
    // conjugate map2 by x -> 1-x and re-run: a decreasing conjugacy between the
    // originals is an increasing one against the conjugated map
    try {
        std::vector<Scalar> bk = b.map.breakpoints();
        std::vector<Scalar> fbk;
        for (size_t i = bk.size(); i-- > 0;) fbk.push_back(Scalar(1) - bk[i]);
        std::vector<PLBranch> fbr;
        for (int i = b.map.branch_count(); i-- > 0;) {
            // branch of 1 - tau(1-x): slope kept, intercept 1 - slope - intercept
            const PLBranch& br = b.map.branch(i);
            fbr.push_back(PLBranch{br.slope, Scalar(1) - br.slope - br.intercept});
        }
        PLMap flipped(std::move(fbk), std::move(fbr));
        ConjugacyResult rf = conjugacy_compare(a.map, flipped, opt.bound);
        out["decreasing"] =
            Json{{"verdict", names[static_cast<int>(rf.verdict)]}, {"reason", rf.reason}};
    } catch (const Error& e) {
        out["decreasing"] = Json{{"verdict", "undetermined"}, {"reason", e.what()}};
    }
    return out;
}

}  // namespace dgim
