#pragma once

#include "dgim/symbolic.hpp"

#include <json.hpp>

namespace dgim {

using Json = nlohmann::ordered_json;

// Number literal grammar: "p/q" or decimal string for rationals;
// {"minpoly": [c0..cd], "interval": ["lo","hi"], "value": [a0..a_{d-1}]}
// for algebraic values (polynomial in the root, little-endian coefficients).
// Plain JSON integers are exact; JSON floats are converted bit-exactly (the
// decimal string form is the reliable way to write 1.2 exactly).
Scalar parse_scalar(const Json& j, const ContextPtr& session_ctx = nullptr);
Rat parse_rat(const Json& j);

Json scalar_to_json(const Scalar& s);
Json rat_to_json(const Rat& r);
Json intpoly_to_json(const IntPoly& p);
IntPoly intpoly_from_json(const Json& j);

// MapSpec: {"type":"tent","s":...} | {"type":"beta","beta":...}
//        | {"type":"uniform_pl","s":...,"breakpoints":[...],"directions":["+","-"],
//           "anchor":{"x":...,"y":...,"branch":0}}
//        | {"type":"explicit","breakpoints":[...],"branches":[{"slope":...,"intercept":...}]}
struct ParsedMap {
    PLMap map;
    std::string kind;   // tent | beta | uniform_pl | explicit
    Json echo;          // normalized spec for report echo
};

ParsedMap parse_map_spec(const Json& j);

Json step_to_json(const StepFunction& f);
StepFunction step_from_json(const Json& j, const ContextPtr& session_ctx = nullptr);

Json interval_set_to_json(const IntervalSet& s);
Json measure_to_json(const MeasureWeights& mu);

}  // namespace dgim
