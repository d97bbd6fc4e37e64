#pragma once

#include "dgim/dimension.hpp"
#include "dgim/numio.hpp"
#include "dgim/pf_lab.hpp"

namespace dgim {

struct AnalysisOptions {
    int bound = 256;
    Rat tol = Rat(1, 1000000);
    int maxiter = 500;
    bool generic_s = false;
    bool want_pf = false;
    std::vector<std::string> entropy_methods = {"markov_exact", "power_iteration"};
    int cylinder_depth = 12;
};

Json presentation_to_json(const DimensionTriple& t, bool generic_s);
Json markov_to_json(const PLMap& map, const MarkovData& md);
Json decomposition_to_json(const ExactDecomposition& dec);
Json entropy_to_json(const EntropyEstimate& e);
Json state_range_to_json(const SubgroupOfR& r);
Json pf_report_to_json(const PFReport& rep, const PFCycleVerdict* verdict);

// full pipeline; every non-certified field carries bound metadata
Json analyze(const ParsedMap& pm, const AnalysisOptions& opt);
Json entropy_report(const ParsedMap& pm, const AnalysisOptions& opt);
Json markov_report(const ParsedMap& pm, const AnalysisOptions& opt);
Json dimension_report(const ParsedMap& pm, const AnalysisOptions& opt);
Json decompose_report(const ParsedMap& pm, const AnalysisOptions& opt);
Json pf_report(const ParsedMap& pm, const AnalysisOptions& opt);
Json compare_report(const ParsedMap& a, const ParsedMap& b, const AnalysisOptions& opt);

// CLI entry; argv-style arguments (without the program name). Returns the
// process exit code, writes the report to out.
int run_cli(const std::vector<std::string>& args, std::string& out);

}  // namespace dgim
