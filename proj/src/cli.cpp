#include "dgim/analyze.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

namespace dgim {

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

ParsedMap load_map(const std::string& path) { return parse_map_spec(load_json(path)); }

std::string render_text(const Json& j, int indent = 0) {
    std::ostringstream os;
    std::string pad(static_cast<size_t>(indent), ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool approx = it.key().find("approx") != std::string::npos ||
                          it.key().find("estimate") != std::string::npos;
            if (it.value().is_object() || it.value().is_array()) {
                os << pad << it.key() << ":\n" << render_text(it.value(), indent + 2);
            } else {
                os << pad << it.key() << ": " << (approx ? "\u2248 " : "")
                   << it.value().dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n" << render_text(v, indent + 2);
            } else {
                os << pad << "- " << v.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
    return os.str();
}

// brute-force search certificate for stationary-limit equality
Json oracle_ga_equal(const Json& spec) {
    IMat A;
    const Json& ja = spec.at("A");
    A = IMat(ja.size(), ja.size());
    for (size_t i = 0; i < ja.size(); ++i)
        for (size_t j = 0; j < ja[i].size(); ++j) A[i][j] = Int(ja[i][j].get<long>());
    auto getvec = [&](const char* key) {
        std::vector<Int> v;
        for (const auto& x : spec.at(key)) v.emplace_back(x.get<long>());
        return v;
    };
    std::vector<Int> v1 = getvec("v1"), v2 = getvec("v2");
    int n1 = spec.value("n1", 0), n2 = spec.value("n2", 0);
    int kmax = spec.value("kmax", 12);
    auto powv = [&](std::vector<Int> v, int e) {
        for (int i = 0; i < e; ++i) v = row_times_mat(v, A);
        return v;
    };
    Json out = Json::object();
    for (int k = 0; k <= kmax; ++k) {
        if (powv(v1, n2 + k) == powv(v2, n1 + k)) {
            out["equal"] = true;
            out["witness_k"] = k;
            return out;
        }
    }
    out["equal"] = false;
    out["kmax"] = kmax;
    return out;
}

Json oracle_pf_solve(const ParsedMap& pm, int bound) {
    auto det = detect_markov(pm.map, bound);
    if (!std::holds_alternative<MarkovData>(det))
        throw Error("pf-solve oracle needs a Markov map");
    const MarkovData& md = std::get<MarkovData>(det);
    StepFunction phi = pf_solve_markov(pm.map, md, bound);
    TransferContext T(pm.map);
    PerronData pd = perron_data(md.incidence, pm.map.context());
    StepFunction residual = T.pf_apply(phi, pd.s) - phi;
    Json out = Json::object();
    out["phi"] = step_to_json(phi);
    out["residual_sup"] = scalar_to_json(residual.sup_norm());
    out["s"] = scalar_to_json(pd.s);
    return out;
}

Json oracle_cylinders(const ParsedMap& pm, int depth) {
    Json out = Json::object();
    Json counts = Json::array();
    for (int d = 1; d <= depth; ++d) {
        CylinderCount cc = entropy_cylinder_count(pm.map, d);
        counts.push_back(cc.count.get_str());
    }
    out["counts"] = counts;
    out["depth"] = depth;
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out) {
    CLI::App app{"exact invariants of piecewise monotonic interval maps"};
    app.require_subcommand(1);

    std::string map_path, map2_path, format = "json", oracle_kind, oracle_spec_path;
    AnalysisOptions opt;
    std::string tol_str = "1/1000000";
    int depth = 12;
    bool with_pf = false, with_cylinders = false;

    auto add_common = [&](CLI::App* sub, bool needs_map = true) {
        if (needs_map)
            sub->add_option("--map", map_path, "map spec JSON file")->required();
        sub->add_option("--bound", opt.bound, "orbit/equivalence bound (default 256)");
        sub->add_option("--tol", tol_str, "tolerance as a rational, e.g. 1/1000000");
        sub->add_option("--maxiter", opt.maxiter, "iteration cap (default 500)");
        sub->add_flag("--generic-s", opt.generic_s, "declare s transcendental");
        sub->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "full pipeline report");
    add_common(analyze_cmd);
    analyze_cmd->add_flag("--pf", with_pf, "include Perron-Frobenius iteration");
    analyze_cmd->add_flag("--cylinders", with_cylinders, "include cylinder-count entropy");
    analyze_cmd->add_option("--depth", depth, "cylinder depth (default 12)");

    CLI::App* entropy_cmd = app.add_subcommand("entropy", "entropy estimates");
    add_common(entropy_cmd);
    std::vector<std::string> methods;
    entropy_cmd->add_option("--method", methods,
                            "markov_exact|power_iteration|cylinder_count (repeatable)");
    entropy_cmd->add_option("--depth", depth, "cylinder depth");

    CLI::App* markov_cmd = app.add_subcommand("markov", "Markov detection and Perron data");
    add_common(markov_cmd);

    CLI::App* dim_cmd = app.add_subcommand("dimension", "dimension triple presentation");
    add_common(dim_cmd);

    CLI::App* dec_cmd = app.add_subcommand("decompose", "transitivity and exactness decomposition");
    add_common(dec_cmd);

    CLI::App* pf_cmd = app.add_subcommand("pf", "Perron-Frobenius eigenfunctions");
    add_common(pf_cmd);

    CLI::App* cmp_cmd = app.add_subcommand("compare", "conjugacy comparison of two maps");
    add_common(cmp_cmd);
    cmp_cmd->add_option("--map2", map2_path, "second map spec JSON file")->required();

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force oracles for test provenance");
    oracle_cmd->add_option("kind", oracle_kind, "ga-equal|pf-solve|cylinders")->required();
    oracle_cmd->add_option("--map", map_path, "map spec JSON file");
    oracle_cmd->add_option("--spec", oracle_spec_path, "oracle input JSON file");
    oracle_cmd->add_option("--bound", opt.bound, "bound");
    oracle_cmd->add_option("--depth", depth, "cylinder depth");
    oracle_cmd->add_option("--format", format, "json|text");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out = app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        os << "argument error: " << e.what() << "\n";
        out = os.str();
        return 2;
    }

    auto started = std::chrono::steady_clock::now();
    Json body;
    try {
        opt.tol = parse_rat(Json(tol_str));
        if (opt.tol <= 0) throw Error("tolerance must be positive");
        opt.want_pf = with_pf;
        opt.cylinder_depth = depth;
        if (with_cylinders) opt.entropy_methods.push_back("cylinder_count");
        if (!methods.empty()) opt.entropy_methods = methods;

        if (analyze_cmd->parsed()) {
            body = analyze(load_map(map_path), opt);
        } else if (entropy_cmd->parsed()) {
            body = entropy_report(load_map(map_path), opt);
        } else if (markov_cmd->parsed()) {
            body = markov_report(load_map(map_path), opt);
        } else if (dim_cmd->parsed()) {
            body = dimension_report(load_map(map_path), opt);
        } else if (dec_cmd->parsed()) {
            body = decompose_report(load_map(map_path), opt);
        } else if (pf_cmd->parsed()) {
            body = pf_report(load_map(map_path), opt);
        } else if (cmp_cmd->parsed()) {
            body = compare_report(load_map(map_path), load_map(map2_path), opt);
        } else if (oracle_cmd->parsed()) {
            if (oracle_kind == "ga-equal") {
                body = oracle_ga_equal(load_json(oracle_spec_path));
            } else if (oracle_kind == "pf-solve") {
                body = oracle_pf_solve(load_map(map_path), opt.bound);
            } else if (oracle_kind == "cylinders") {
                body = oracle_cylinders(load_map(map_path), depth);
            } else {
                throw Error("unknown oracle kind '" + oracle_kind + "'");
            }
        }
    } catch (const UnsupportedClass& e) {
        out = std::string("error: ") + e.what() + "\n";
        return 3;
    } catch (const Error& e) {
        out = std::string("error: ") + e.what() + "\n";
        return 2;
    } catch (const Json::exception& e) {
        out = std::string("error: invalid JSON input: ") + e.what() + "\n";
        return 2;
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    Json envelope = Json::object();
    envelope["report"] = body;
    envelope["timing"] = Json{{"elapsed_ms", elapsed}};
    if (format == "json") {
        out = envelope.dump(2) + "\n";
    } else {
        out = render_text(body) + "(elapsed " + std::to_string(elapsed) + " ms)\n";
    }
    return 0;
}

}  // namespace dgim
