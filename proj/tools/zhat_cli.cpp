#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "zhat/cgp.hpp"
#include "zhat/error.hpp"
#include "zhat/io.hpp"
#include "zhat/zhat.hpp"

using namespace zhat;
using nlohmann::json;

namespace {

// Exit codes; see README.
enum Exit : int {
    ok = 0,
    internal = 1,
    usage = 2,
    invalid_graph = 3,
    non_generic = 4,
    no_chamber = 5,
    not_positive_definite = 6,
    positive_betti = 7,
    mismatch = 8,
    atypical = 9,
    engine = 10,
};

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::invalid_graph: return invalid_graph;
    case ErrorKind::non_generic: return non_generic;
    case ErrorKind::no_chamber: return no_chamber;
    case ErrorKind::not_positive_definite: return not_positive_definite;
    case ErrorKind::positive_betti:
    case ErrorKind::singular_matrix: return positive_betti;
    case ErrorKind::parse:
    case ErrorKind::inapplicable_move:
    case ErrorKind::domain: return usage;
    case ErrorKind::atypical:
    case ErrorKind::closure: return atypical;
    default: return engine;
    }
}

struct RunConfig {
    std::string graph;
    std::vector<std::string> graphs;
    std::string order = std::to_string(kDefaultOrder);
    std::string labels = "0,0";
    std::string chamber;
    std::string format = "text";
    int workers = 1;
    bool allow_indefinite = false;
    // moves
    std::string move;
    int site = -1;
    std::int64_t split_weight = 0;
    std::vector<int> moved;
    std::string output;
    // cgp
    int l = 3;
    int samples = 10;
    std::uint64_t seed = 1;
    std::string mu1, mu2;
    bool reciprocity = false;
    int trials = 50;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, sep))
        out.push_back(tok);
    return out;
}

Chamber pick_chamber(const ManifoldData& d, const std::string& spec)
{
    if (spec.empty())
        return d.chambers.front();
    Chamber c;
    for (std::size_t I = 0; I < d.degrees.size(); ++I)
        if (d.degrees[I] != 2)
            c.vertices.push_back(static_cast<int>(I));
    for (const auto& t : split(spec, ','))
        c.alpha.push_back(std::stoi(t));
    if (c.alpha.size() != c.vertices.size())
        throw Error(ErrorKind::parse, "chamber needs one sign per vertex of degree != 2");
    if (!is_good_chamber(d.Binv, d.degrees, c))
        throw Error(ErrorKind::no_chamber, "chamber " + c.to_string() + " is not good");
    return c;
}

int cmd_zhat(const RunConfig& cfg)
{
    const ManifoldData d = analyze(load_graph(cfg.graph));
    ZhatOptions opts{cfg.workers, !cfg.allow_indefinite};
    require_computable(d, opts.require_positive_definite);
    const Rational N = parse_rational(cfg.order);
    const Chamber ch = pick_chamber(d, cfg.chamber);

    std::vector<std::pair<LabelPair, QSeries>> results;
    if (cfg.labels == "all") {
        results = compute_all(d, ch, N, opts);
    } else {
        auto ab = split(cfg.labels, ',');
        if (ab.size() != 2)
            throw Error(ErrorKind::parse, "labels must be 'a,b' or 'all'");
        results.emplace_back(LabelPair{ab[0], ab[1]},
                             compute_zhat(d, find_label(d, ab[0]).rep, find_label(d, ab[1]).rep, ch, N, opts));
    }
    if (cfg.format == "json") {
        json out = json::array();
        for (const auto& [p, s] : results)
            out.push_back({{"a", p.first}, {"b", p.second}, {"series", series_to_json(s)}});
        std::cout << (results.size() == 1 ? out[0] : out).dump(2) << "\n";
    } else if (results.size() == 1 && cfg.labels != "all") {
        std::cout << render(results[0].second) << "\n";
    } else {
        for (const auto& [p, s] : results)
            std::cout << "Z[" << p.first << "," << p.second << "] = " << render(s) << "\n";
    }
    return ok;
}

int cmd_check(const RunConfig& cfg)
{
    const ManifoldData d = analyze(load_graph(cfg.graph));
    json rep;
    rep["det"] = d.det.str();
    rep["positive_definite"] = d.positive_definite;
    json divs = json::array();
    for (const auto& x : d.snf.divisors())
        if (x != 1)
            divs.push_back(x.str());
    rep["invariant_factors"] = divs;
    std::string gen = "generic";
    if (!d.genericity.is_generic) {
        gen = d.genericity.failed_condition == GenericityFailure::no_high_degree_vertex
                  ? "non-generic (no vertex of degree > 2)"
                  : "non-generic (vanishing inverse entry between vertices " +
                        std::to_string(d.genericity.witness->first) + " and " +
                        std::to_string(d.genericity.witness->second) + ")";
    }
    rep["genericity"] = gen;
    rep["chambers"] = describe_chambers(d.chambers);
    json labels = json::array();
    for (const auto& l : d.labels) {
        std::string v;
        for (Eigen::Index i = 0; i < l.rep.size(); ++i)
            v += (i ? "," : "") + l.rep(i).str();
        labels.push_back({{"name", l.name}, {"representative", "(" + v + ")"}});
    }
    rep["labels"] = labels;
    if (cfg.format == "json") {
        std::cout << rep.dump(2) << "\n";
        return ok;
    }
    std::cout << gen << "; chambers " << rep["chambers"].get<std::string>() << "; |H1| = "
              << (d.det < 0 ? BigInt(-d.det) : d.det).str() << "\n";
    std::cout << "det B = " << d.det.str() << "\n";
    std::cout << "positive definite: " << (d.positive_definite ? "yes" : "no") << "\n";
    std::cout << "invariant factors:";
    for (const auto& x : divs)
        std::cout << " " << x.get<std::string>();
    std::cout << (divs.empty() ? " none\n" : "\n");
    std::cout << "labels:";
    for (const auto& l : labels)
        std::cout << " " << l["name"].get<std::string>() << "=" << l["representative"].get<std::string>();
    std::cout << "\n";
    return ok;
}

int cmd_moves_apply(const RunConfig& cfg)
{
    const PlumbingGraph g = load_graph(cfg.graph);
    MoveSpec mv{parse_move_kind(cfg.move), cfg.site, cfg.split_weight, cfg.moved};
    const PlumbingGraph h = apply_move(g, mv);
    const std::string text = graph_to_json(h).dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        out << text;
    }
    return ok;
}

int cmd_moves_verify(const RunConfig& cfg)
{
    std::vector<PlumbingGraph> gs;
    for (const auto& p : cfg.graphs)
        gs.push_back(load_graph(p));
    const Rational N = parse_rational(cfg.order);
    auto v = compare_presentations(gs, N, cfg.labels == "all", ZhatOptions{cfg.workers});
    if (v.equal) {
        std::cout << "EQUAL through q^" << to_string(N) << " across " << gs.size() << " graphs\n";
        return ok;
    }
    std::cout << "DIFFER";
    if (v.first_exponent)
        std::cout << " at q^" << to_string(*v.first_exponent);
    std::cout << ": " << cfg.graphs[v.graph] << " vs " << cfg.graphs[0] << " (" << v.detail << ")\n";
    return mismatch;
}

std::vector<Rational> parse_list(const std::string& s)
{
    std::vector<Rational> out;
    for (const auto& t : split(s, ','))
        out.push_back(frac(parse_rational(t)));
    return out;
}

int cmd_reciprocity(const RunConfig& cfg)
{
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> entry(-5, 5), dim(1, 4), lev(0, 2);
    double worst = 0;
    int done = 0;
    while (done < cfg.trials) {
        const int n = dim(rng);
        MatrixZ A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                A(i, j) = A(j, i) = entry(rng);
        if (determinant(A) == 0)
            continue;
        VectorZ p(n);
        for (int i = 0; i < n; ++i)
            p(i) = entry(rng);
        const int l = 3 + 2 * lev(rng);
        const double r = cgp::gauss_reciprocity_residual(cast_matrix<Rational>(A), p, l);
        worst = std::max(worst, r);
        ++done;
    }
    std::cout << "random instances: " << done << ", max residual " << worst << "\n";
    if (!cfg.graph.empty()) {
        const MatrixZ B = adjacency(load_graph(cfg.graph));
        const auto L = B.rows();
        MatrixQ M = MatrixQ::Zero(2 * L, 2 * L);
        for (Eigen::Index i = 0; i < L; ++i)
            for (Eigen::Index j = 0; j < L; ++j)
                M(i, L + j) = M(L + i, j) = Rational(B(i, j)) / 2;
        VectorZ p(2 * L);
        for (Eigen::Index i = 0; i < 2 * L; ++i)
            p(i) = 2 * entry(rng);
        const double r = cgp::gauss_reciprocity_residual(M, p, cfg.l);
        std::cout << "structured instance (1/2)(0 B; B 0), l = " << cfg.l << ": residual " << r << "\n";
        worst = std::max(worst, r);
    }
    return worst < 1e-7 ? ok : mismatch;
}

int cmd_cgp(const RunConfig& cfg)
{
    if (cfg.reciprocity)
        return cmd_reciprocity(cfg);
    const PlumbingGraph g = load_graph(cfg.graph);
    const MatrixZ B = adjacency(g);
    std::vector<cgp::CGPColor> colors;
    if (!cfg.mu1.empty() || !cfg.mu2.empty()) {
        colors.push_back({parse_list(cfg.mu1), parse_list(cfg.mu2)});
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (int i = 0; i < cfg.samples; ++i)
            colors.push_back(cgp::sample_closed_color(B, rng));
    }
    int status = ok;
    for (const auto& c : colors) {
        std::string label;
        for (std::size_t I = 0; I < c.mu1.size(); ++I)
            label += (I ? " " : "") + std::string("(") + to_string(c.mu1[I]) + "," + to_string(c.mu2[I]) + ")";
        try {
            const auto s = cgp::state_sum(g, c, cfg.l, 0);
            double spread = 0;
            for (int i0 = 1; i0 < static_cast<int>(g.size()); ++i0) {
                const auto t = cgp::state_sum(g, c, cfg.l, i0);
                spread = std::max(spread, std::abs(t.vertex_form - s.vertex_form) / std::abs(s.vertex_form));
            }
            std::cout << "mu = " << label << "\n"
                      << "  vertex form  " << s.vertex_form << "\n"
                      << "  literal form " << s.literal_form << "  relative difference " << s.relative_difference()
                      << "\n"
                      << "  exact form   " << s.exact_form << "\n"
                      << "  I0 spread    " << spread << "\n";
            if (s.relative_difference() > 1e-8 || spread > 1e-8)
                status = mismatch;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::atypical && e.kind() != ErrorKind::closure)
                throw;
            std::cout << "mu = " << label << "\n  " << e.what() << "\n";
            status = atypical;
        }
    }
    return status;
}

int default_workers()
{
    if (const char* w = std::getenv("ZHAT_WORKERS"))
        return std::max(1, std::atoi(w));
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    // bare invocation means the zhat subcommand
    static const std::vector<std::string> commands{"zhat", "check", "moves", "cgp"};
    if (args.empty() || (std::find(commands.begin(), commands.end(), args[0]) == commands.end() &&
                         args[0] != "-h" && args[0] != "--help"))
        args.insert(args.begin(), "zhat");
    std::reverse(args.begin(), args.end());

    RunConfig cfg;
    cfg.workers = default_workers();
    CLI::App app{"Homological block calculator for plumbed 3-manifolds"};
    app.require_subcommand(1);

    auto* z = app.add_subcommand("zhat", "compute Z_ab");
    z->add_option("--graph,-g", cfg.graph, "graph file (JSON or 'w0: w1 w2 ...')")->required();
    z->add_option("--order,-N", cfg.order, "truncation order");
    z->add_option("--labels", cfg.labels, "'a,b' or 'all'");
    z->add_option("--chamber", cfg.chamber, "comma-separated signs");
    z->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    z->add_option("--workers,-j", cfg.workers);
    z->add_flag("--allow-indefinite", cfg.allow_indefinite, "skip the positive-definiteness precondition");

    auto* c = app.add_subcommand("check", "genericity, chambers and labels");
    c->add_option("--graph,-g", cfg.graph)->required();
    c->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* m = app.add_subcommand("moves", "graph moves");
    m->require_subcommand(1);
    auto* ma = m->add_subcommand("apply", "apply one move");
    ma->add_option("--graph,-g", cfg.graph)->required();
    ma->add_option("--move", cfg.move, "blow-up, blow-down, absorb, insert")->required();
    ma->add_option("--site", cfg.site, "vertex id")->required();
    ma->add_option("--split-weight", cfg.split_weight);
    ma->add_option("--moved", cfg.moved, "neighbor ids taken by the split vertex")->delimiter(',');
    ma->add_option("--output,-o", cfg.output);
    auto* mv = m->add_subcommand("verify", "compare Z across presentations");
    mv->add_option("--graph,-g", cfg.graphs)->required();
    mv->add_option("--order,-N", cfg.order);
    mv->add_option("--labels", cfg.labels, "'0,0' or 'all'");
    mv->add_option("--workers,-j", cfg.workers);

    auto* g = app.add_subcommand("cgp", "root-of-unity state sum checks");
    g->add_option("--graph,-g", cfg.graph);
    g->add_option("--l", cfg.l)->check(CLI::Range(3, 99));
    g->add_option("--samples", cfg.samples);
    g->add_option("--seed", cfg.seed);
    g->add_option("--mu1", cfg.mu1, "comma-separated rationals");
    g->add_option("--mu2", cfg.mu2);
    g->add_flag("--reciprocity", cfg.reciprocity);
    g->add_option("--trials", cfg.trials);

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (z->parsed())
            return cmd_zhat(cfg);
        if (c->parsed())
            return cmd_check(cfg);
        if (ma->parsed())
            return cmd_moves_apply(cfg);
        if (mv->parsed())
            return cmd_moves_verify(cfg);
        if (g->parsed()) {
            if (!cfg.reciprocity && cfg.graph.empty())
                throw Error(ErrorKind::parse, "--graph is required");
            if (cfg.l % 2 == 0)
                throw Error(ErrorKind::domain, "l must be odd");
            return cmd_cgp(cfg);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return internal;
    }
    return usage;
}
