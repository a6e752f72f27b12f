// itembound: bounds on boolean query frequencies from itemset frequencies.
//
// Exit codes: 0 ok, 1 infeasible or inconsistent input, 2 usage or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "itembound/bounds.hpp"
#include "itembound/cut.hpp"
#include "itembound/experiment.hpp"
#include "itembound/graph.hpp"
#include "itembound/junction.hpp"
#include "itembound/maxent.hpp"
#include "itembound/miner.hpp"
#include "itembound/query.hpp"

using namespace itembound;

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string rank_str(const RankVector& r) {
    std::string out = "(";
    for (std::size_t i = 0; i < r.counts.size(); ++i) out += (i ? "," : "") + std::to_string(r.counts[i]);
    return out + ")";
}

std::string edge_list(const AttributeUniverse& u, const std::vector<Edge>& edges) {
    std::string out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        out += (i ? "," : "") + ("(" + u.name(edges[i].first) + "," + u.name(edges[i].second) + ")");
    return out;
}

Rational parse_sigma(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError("invalid sigma '" + text + "'");
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw std::ios_base::failure("cannot write " + path);
}

int cmd_mine(const std::string& data, const std::string& sigma, int max_size, bool classic, const std::string& out) {
    MinerConfig cfg;
    cfg.sigma = parse_sigma(sigma);
    cfg.max_size = max_size;
    cfg.use_scaling = !classic;
    const TransactionDB db = read_transactions(data);
    const ScalingFactors s = scaling_factors(db);
    for (const Item i : s.dropped) std::cerr << "warning: item " << db.universe.name(i) << " never occurs; dropped\n";
    const FrequentItemsets fi = modified_apriori(db, cfg);
    write_text(out, format_family(fi));
    if (out != "-") std::cout << fi.family.size() << " itemsets written to " << out << "\n";
    return 0;
}

int cmd_safeset(const std::string& family_path, const std::string& attrs, int max_size, bool trace) {
    const FrequentItemsets fi = read_family(family_path);
    const Itemset b = fi.universe.parse_set(attrs);
    const DependencyGraph g = build_graph(fi.family, fi.universe.size());
    if (max_size < 0) {
        SafeSetTrace t;
        const Itemset c = minimal_safe_set(b, fi.family, g, &t);
        std::cout << fi.universe.format(c) << "\n";
        if (trace) {
            for (std::size_t k = 0; k < t.steps.size(); ++k) {
                const auto& step = t.steps[k];
                std::cout << "step " << k + 1 << ": C=" << fi.universe.format(step.before) << " radius "
                          << step.round.radius << "\n";
                for (const auto& v : step.round.violators)
                    std::cout << "  violator " << fi.universe.name(v.item) << " reaches "
                              << fi.universe.format(v.reached) << " rank " << rank_str(v.rank) << "\n";
            }
        }
        return 0;
    }
    if (b.size() > max_size) throw UsageError("attribute set exceeds --max-size");
    const RestrictedSafeSet r = restricted_safe_set(b, fi.family, fi.theta, max_size, fi.universe.size());
    std::vector<Edge> removed;
    for (const auto& cut : r.removed) removed.insert(removed.end(), cut.cut.edges.begin(), cut.cut.edges.end());
    std::cout << fi.universe.format(r.set);
    if (!removed.empty()) std::cout << "; removed " << edge_list(fi.universe, removed);
    std::cout << "\n";
    if (!r.within_budget) std::cout << "warning: no cut brings the set within " << max_size << " items\n";
    if (trace) {
        for (const auto& cut : r.removed) {
            char cost[32];
            std::snprintf(cost, sizeof cost, "%.4f", cut.cut.cost);
            std::cout << "cut for " << fi.universe.name(cut.item) << " (frontier " << fi.universe.format(cut.frontier)
                      << "): " << edge_list(fi.universe, cut.cut.edges) << " cost " << cost << "\n";
        }
        if (r.dependent_edges_removed) std::cout << "note: removed edges carry positive mutual information\n";
        if (r.nonmaximal_edges_removed) std::cout << "note: removed edges lie inside larger itemsets\n";
    }
    return 0;
}

int cmd_bound(const std::string& family_path, const std::string& query, const std::string& policy_text, bool json) {
    const FrequentItemsets fi = read_family(family_path);
    const Formula f = parse(query).bind(fi.universe);
    Policy policy;
    try {
        policy = Policy::parse(policy_text);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const BoundResult r = bound_with_policy(f, fi.family, fi.theta, policy);
    if (json) {
        nlohmann::ordered_json j;
        j["query"] = f.str();
        j["policy"] = policy.str();
        j["lo"] = r.interval.lo.str();
        j["hi"] = r.interval.hi.str();
        j["projection"] = fi.universe.format(r.projection);
        j["variables"] = r.variables;
        j["constraints"] = r.constraints;
        if (policy.kind == PolicyKind::Restricted) {
            auto edges = nlohmann::ordered_json::array();
            for (const auto& e : r.removed_edges)
                edges.push_back(nlohmann::ordered_json::array({fi.universe.name(e.first), fi.universe.name(e.second)}));
            j["removed_edges"] = std::move(edges);
            j["within_budget"] = r.within_budget;
        }
        if (policy.kind == PolicyKind::Factorized) {
            auto cliques = nlohmann::ordered_json::array();
            for (const auto& q : r.cliques) cliques.push_back(fi.universe.format(q));
            j["cliques"] = std::move(cliques);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << r.interval.lo.str() << " " << r.interval.hi.str() << "\n";
    std::cout << "projection " << fi.universe.format(r.projection) << "\n";
    std::cout << "variables " << r.variables << "\n";
    std::cout << "constraints " << r.constraints << "\n";
    if (!r.removed_edges.empty()) std::cout << "removed " << edge_list(fi.universe, r.removed_edges) << "\n";
    return 0;
}

struct ExperimentArgs {
    std::string data;
    std::string family;
    std::string sigma = "0.1";
    int mine_max_size = -1;
    int queries = 100;
    std::string query_size = "2..4";
    int max_size = 8;
    std::uint64_t seed = 1;
    bool general = false;
    int threads = 0;
    std::string json;
};

int cmd_experiment(const ExperimentArgs& a) {
    ExperimentConfig cfg;
    cfg.sigma = parse_sigma(a.sigma);
    cfg.mine_max_size = a.mine_max_size;
    cfg.queries = a.queries;
    cfg.max_size = a.max_size;
    cfg.seed = a.seed;
    cfg.general = a.general;
    cfg.threads = a.threads;
    const auto dots = a.query_size.find("..");
    try {
        if (dots == std::string::npos) {
            cfg.min_query = cfg.max_query = std::stoi(a.query_size);
        } else {
            cfg.min_query = std::stoi(a.query_size.substr(0, dots));
            cfg.max_query = std::stoi(a.query_size.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw UsageError("invalid --query-size '" + a.query_size + "'");
    }
    if (cfg.min_query < 1 || cfg.max_query < cfg.min_query) throw UsageError("invalid --query-size range");
    if (a.data.empty() == a.family.empty()) throw UsageError("give exactly one of --data and --family");

    const ExperimentReport report =
        a.data.empty() ? run_experiment(read_family(a.family), cfg) : run_experiment(read_transactions(a.data), cfg);
    std::cout << report.to_text();
    if (!a.json.empty()) write_text(a.json, report.to_json());
    return 0;
}

int cmd_maxent(const std::string& family_path, const std::string& attrs, double tol, int cycles) {
    const FrequentItemsets fi = read_family(family_path);
    const Itemset c = attrs.empty() ? fi.universe.all() : fi.universe.parse_set(attrs);
    MaxentOptions opt;
    opt.tolerance = tol;
    opt.max_cycles = cycles;
    const MaxentResult r = ipf_maxent(fi.family, fi.theta, c, opt);
    char line[64];
    for (const auto& u : fi.family) {
        if (!u.subset_of(c)) continue;
        const double e = expectation(r.distribution, u);
        const double t = fi.theta.at(u).to_double();
        std::snprintf(line, sizeof line, "%.10f %.10f %.3e", e, t, std::abs(e - t));
        std::cout << fi.universe.format(u) << " " << line << "\n";
    }
    std::snprintf(line, sizeof line, "%.3e", r.residual);
    std::cout << "cycles " << r.iterations << " residual " << line << (r.converged ? " converged" : " not converged")
              << "\n";
    return r.converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds on boolean query frequencies from itemset frequencies"};
    app.require_subcommand(1);

    std::string data, out = "-", sigma = "0.1", family, attrs, query, policy = "safe";
    int max_size = -1;
    bool classic = false, trace = false, json = false;

    auto* mine = app.add_subcommand("mine", "mine itemsets with the relative threshold");
    mine->add_option("--data", data, "transaction file")->required();
    mine->add_option("--sigma", sigma, "threshold, decimal or p/q")->required();
    mine->add_option("--max-size", max_size, "largest itemset size");
    mine->add_flag("--classic", classic, "plain support threshold");
    mine->add_option("--out", out, "output family file, - for stdout");

    auto* safeset = app.add_subcommand("safeset", "minimal or restricted safe set")->alias("restrict");
    safeset->add_option("--family", family, "family file")->required();
    safeset->add_option("--attrs", attrs, "attributes, e.g. b,c")->required();
    safeset->add_option("--max-size", max_size, "size budget for the restricted set");
    safeset->add_flag("--trace", trace, "print the construction steps");

    auto* bound = app.add_subcommand("bound", "frequency interval of a query");
    bound->add_option("--family", family, "family file")->required();
    bound->add_option("--query", query, "boolean formula")->required();
    bound->add_option("--policy", policy, "trivial|safe|restricted:M|factorized");
    bound->add_flag("--json", json, "JSON output");

    ExperimentArgs ex;
    auto* experiment = app.add_subcommand("experiment", "query-ratio experiment");
    experiment->add_option("--data", ex.data, "transaction file");
    experiment->add_option("--family", ex.family, "family file instead of mining");
    experiment->add_option("--sigma", ex.sigma, "mining threshold");
    experiment->add_option("--mine-max-size", ex.mine_max_size, "largest mined itemset");
    experiment->add_option("--queries", ex.queries, "number of queries");
    experiment->add_option("--query-size", ex.query_size, "range such as 2..4");
    experiment->add_option("--max-size", ex.max_size, "restricted safe set budget");
    experiment->add_option("--seed", ex.seed, "random seed");
    experiment->add_flag("--general", ex.general, "random formulas instead of conjunctions");
    experiment->add_option("--threads", ex.threads, "worker threads");
    experiment->add_option("--json", ex.json, "also write the JSON report here, - for stdout");

    double tol = 1e-9;
    int cycles = 10'000;
    auto* maxent = app.add_subcommand("maxent", "maximum entropy fit");
    maxent->add_option("--family", family, "family file")->required();
    maxent->add_option("--attrs", attrs, "attribute subset, default all");
    maxent->add_option("--tol", tol, "residual tolerance");
    maxent->add_option("--max-cycles", cycles, "cycle cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*mine) return cmd_mine(data, sigma, max_size, classic, out);
        if (*safeset) return cmd_safeset(family, attrs, max_size, trace);
        if (*bound) return cmd_bound(family, query, policy, json);
        if (*experiment) return cmd_experiment(ex);
        if (*maxent) return cmd_maxent(family, attrs, tol, cycles);
    } catch (const InconsistentFrequencies& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
