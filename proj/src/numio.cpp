#include "dgim/numio.hpp"

namespace dgim {

Rat parse_rat(const Json& j) {
    Scalar s = parse_scalar(j);
    if (!s.is_rational()) throw Error("expected a rational literal");
    return s.rat();
}

Scalar parse_scalar(const Json& j, const ContextPtr& session_ctx) {
    if (j.is_string()) return Scalar::from_decimal(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(Rat(static_cast<long>(j.get<int64_t>())));
    if (j.is_number_float()) {
        // exact binary value of the double; decimal strings are the faithful form
        Rat r(j.get<double>());
        r.canonicalize();
        return Scalar(r);
    }
    if (j.is_object()) {
        if (!j.contains("minpoly") || !j.contains("interval") || !j.contains("value"))
            throw Error("algebraic literal needs minpoly, interval, value");
        IntPoly mp = intpoly_from_json(j.at("minpoly"));
        const Json& iv = j.at("interval");
        if (!iv.is_array() || iv.size() != 2) throw Error("interval must be [lo, hi]");
        Rat lo = parse_rat(iv[0]), hi = parse_rat(iv[1]);
        ContextPtr ctx = AlgebraicContext::make(mp, lo, hi);
        if (session_ctx) {
            if (!same_root(session_ctx, ctx) && session_ctx->minpoly() != ctx->minpoly())
                throw ContextMismatch("algebraic literal outside the session context");
            if (same_root(session_ctx, ctx)) ctx = session_ctx;
        }
        const Json& val = j.at("value");
        if (!val.is_array()) throw Error("value must be a coefficient array");
        std::vector<Rat> coeffs;
        for (const auto& c : val) coeffs.push_back(parse_rat(c));
        return Scalar::algebraic(RatPoly(std::move(coeffs)), ctx);
    }
    throw Error("unrecognized number literal");
}

Json rat_to_json(const Rat& r) { return Json(r.get_str()); }

Json scalar_to_json(const Scalar& s) {
    if (s.is_rational()) return rat_to_json(s.rat());
    Json out = Json::object();
    out["minpoly"] = intpoly_to_json(s.context()->minpoly());
    RootInterval iv = s.context()->interval();
    out["interval"] = Json::array({iv.lo.get_str(), iv.hi.get_str()});
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs().c) coeffs.push_back(c.get_str());
    out["value"] = coeffs;
    out["approx"] = s.approx();
    return out;
}

Json intpoly_to_json(const IntPoly& p) {
    Json arr = Json::array();
    for (const auto& c : p.c) {
        if (c.fits_slong_p()) arr.push_back(c.get_si());
        else arr.push_back(c.get_str());
    }
    return arr;
}

IntPoly intpoly_from_json(const Json& j) {
    if (!j.is_array()) throw Error("polynomial must be a coefficient array");
    std::vector<Int> c;
    for (const auto& v : j) {
        if (v.is_number_integer()) c.emplace_back(static_cast<long>(v.get<int64_t>()));
        else if (v.is_string()) c.emplace_back(Int(v.get<std::string>()));
        else throw Error("polynomial coefficients must be integers");
    }
    return IntPoly(std::move(c));
}

ParsedMap parse_map_spec(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw Error("map spec: missing type");
    std::string type = j.at("type").get<std::string>();
    Json echo = Json::object();
    echo["type"] = type;
    if (type == "tent") {
        Scalar s = parse_scalar(j.at("s"));
        echo["s"] = scalar_to_json(s);
        return {PLMap::tent(s), type, echo};
    }
    if (type == "beta") {
        Scalar b = parse_scalar(j.at("beta"));
        echo["beta"] = scalar_to_json(b);
        return {PLMap::beta_map(b), type, echo};
    }
    if (type == "uniform_pl") {
        Scalar s = parse_scalar(j.at("s"));
        ContextPtr ctx = s.context();
        std::vector<Scalar> bk;
        for (const auto& v : j.at("breakpoints")) {
            Scalar x = parse_scalar(v, ctx);
            if (!ctx) ctx = x.context();
            bk.push_back(x);
        }
        std::vector<bool> dirs;
        for (const auto& d : j.at("directions")) {
            std::string t = d.get<std::string>();
            if (t == "+" || t == "inc" || t == "increasing") dirs.push_back(true);
            else if (t == "-" || t == "dec" || t == "decreasing") dirs.push_back(false);
            else throw Error("direction must be '+' or '-'");
        }
        const Json& anchor = j.at("anchor");
        Scalar ax = parse_scalar(anchor.at("x"), ctx);
        Scalar ay = parse_scalar(anchor.at("y"), ctx);
        int abr = anchor.value("branch", 0);
        echo["s"] = scalar_to_json(s);
        return {PLMap::uniform_pl(s, bk, dirs, abr, ax, ay), type, echo};
    }
    if (type == "explicit") {
        ContextPtr ctx;
        auto absorb = [&](const Scalar& x) {
            if (!ctx && x.context()) ctx = x.context();
        };
        std::vector<Scalar> bk;
        for (const auto& v : j.at("breakpoints")) {
            Scalar x = parse_scalar(v, ctx);
            absorb(x);
            bk.push_back(x);
        }
        std::vector<PLBranch> brs;
        for (const auto& b : j.at("branches")) {
            Scalar sl = parse_scalar(b.at("slope"), ctx);
            absorb(sl);
            Scalar in = parse_scalar(b.at("intercept"), ctx);
            absorb(in);
            brs.push_back(PLBranch{sl, in});
        }
        return {PLMap::explicit_map(std::move(bk), std::move(brs)), type, echo};
    }
    throw Error("map spec: unknown type '" + type + "'");
}

Json step_to_json(const StepFunction& f) {
    Json out = Json::object();
    Json cuts = Json::array();
    const auto& cs = f.cuts();
    for (size_t i = 0; i < cs.size(); ++i) {
        Json c = Json::object();
        c["value"] = scalar_to_json(cs[i]);
        c["side"] = (i == 0) ? "+" : (i + 1 == cs.size() ? "-" : "+");
        cuts.push_back(c);
    }
    out["cuts"] = cuts;
    Json vals = Json::array();
    for (const auto& v : f.values()) vals.push_back(scalar_to_json(v));
    out["values"] = vals;
    return out;
}

StepFunction step_from_json(const Json& j, const ContextPtr& session_ctx) {
    std::vector<Scalar> cuts;
    for (const auto& c : j.at("cuts")) {
        if (c.is_object() && c.contains("value")) cuts.push_back(parse_scalar(c.at("value"), session_ctx));
        else cuts.push_back(parse_scalar(c, session_ctx));
    }
    std::vector<Scalar> vals;
    for (const auto& v : j.at("values")) vals.push_back(parse_scalar(v, session_ctx));
    return StepFunction(std::move(cuts), std::move(vals));
}

Json interval_set_to_json(const IntervalSet& s) {
    Json arr = Json::array();
    for (const auto& p : s.iv)
        arr.push_back(Json::array({scalar_to_json(p.first), scalar_to_json(p.second)}));
    return arr;
}

Json measure_to_json(const MeasureWeights& mu) {
    Json out = Json::object();
    Json bounds = Json::array();
    for (const auto& b : mu.bounds) bounds.push_back(scalar_to_json(b));
    Json masses = Json::array();
    for (const auto& m : mu.masses) masses.push_back(scalar_to_json(m));
    out["bounds"] = bounds;
    out["masses"] = masses;
    return out;
}

}  // namespace dgim
