#include "cli.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "gmrank/culture.hpp"
#include "gmrank/error.hpp"
#include "gmrank/fit.hpp"
#include "gmrank/graph.hpp"
#include "gmrank/io.hpp"

namespace gmrank::cli {

namespace fs = std::filesystem;

namespace {

struct RunFailure {
    int code;
    std::string kind;
    std::string message;
};

[[noreturn]] void fail(int code, std::string kind, std::string message) {
    throw RunFailure{code, std::move(kind), std::move(message)};
}

std::string one_line(std::string s) {
    for (char &c : s) {
        if (c == '\n' || c == '\t' || c == '\r')
            c = ' ';
    }
    return s;
}

const char *mode_name(const RunConfig &c) { return c.deterministic ? "deterministic" : "parallel"; }

// Parameter set shared by every output header and the manifest.
std::string parameter_string(const RunConfig &c) {
    std::ostringstream s;
    s << "gmrank " << command_name(c.command);
    switch (c.command) {
    case Command::Rank:
    case Command::TwoDRank:
    case Command::Correlator:
    case Command::Density:
        s << " graph=" << c.graph_path.string() << " alpha=" << io::format_probability(c.alpha)
          << " tol=" << io::format_probability(c.tol) << " max_iter=" << c.max_iter << " mode=" << mode_name(c);
        if (c.command == Command::Density)
            s << " bins=" << c.bins;
        break;
    case Command::Fit:
        if (!c.vector_path.empty())
            s << " vector=" << c.vector_path.string();
        else
            s << " graph=" << c.graph_path.string() << " alpha=" << io::format_probability(c.alpha)
              << " tol=" << io::format_probability(c.tol) << " max_iter=" << c.max_iter << " mode=" << mode_name(c);
        s << " k_min=" << c.k_min << " k_max=" << c.k_max;
        break;
    case Command::Culture:
        s << " annotations=" << c.annotation_path.string() << " alpha=" << io::format_probability(c.alpha)
          << " tol=" << io::format_probability(c.tol) << " max_iter=" << c.max_iter << " top=" << c.top
          << " heroes=" << c.heroes;
        if (!c.graph_path.empty())
            s << " graph=" << c.graph_path.string() << " edition=" << c.edition.value_or("");
        break;
    }
    return s.str();
}

void validate(const RunConfig &c) {
    if (!(c.alpha > 0.0 && c.alpha < 1.0))
        fail(kInvalidInput, "config", "--alpha must lie in (0, 1)");
    if (!(c.tol > 0.0))
        fail(kInvalidInput, "config", "--tol must be positive");
    if (c.max_iter < 1)
        fail(kInvalidInput, "config", "--max-iter must be at least 1");
    if (c.top < 1)
        fail(kInvalidInput, "config", "--top must be at least 1");
    if (c.bins < 2)
        fail(kInvalidInput, "config", "--bins must be at least 2");
}

/// Output file with the producing command in its first line.
class OutputFile {
public:
    OutputFile(const RunConfig &c, const std::string &name) : path_(c.output_path / name), stream_(path_) {
        if (!stream_)
            fail(kInvalidInput, "io", "cannot write " + path_.string());
        stream_ << "# " << parameter_string(c) << '\n';
    }

    std::ostream &operator*() { return stream_; }

private:
    fs::path path_;
    std::ofstream stream_;
};

class Manifest {
public:
    void add(const std::string &key, const std::string &value) { entries_.emplace_back(key, value); }
    void add(const std::string &key, std::size_t value) { add(key, std::to_string(value)); }
    void add_rank(const std::string &prefix, const RankVector &v) {
        add(prefix + "_iterations", v.iterations_used);
        add(prefix + "_residual", io::format_probability(v.residual));
        add(prefix + "_converged", v.converged ? "1" : "0");
    }

    void write(const RunConfig &c) const {
        OutputFile file(c, "manifest.tsv");
        *file << "key\tvalue\n";
        for (const auto &[k, v] : entries_)
            *file << k << '\t' << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::ifstream open_input(const fs::path &path, const char *what) {
    std::ifstream in(path);
    if (!in)
        fail(kInvalidInput, "io", std::string("cannot open ") + what + " " + path.string());
    return in;
}

DirectedGraph load_graph(const RunConfig &c) {
    if (c.graph_path.empty())
        fail(kInvalidInput, "config", "no graph file given");
    auto in = open_input(c.graph_path, "graph");
    DirectedGraph g = parse_edge_list(in, c.string_ids ? IdMode::ArbitraryString : IdMode::DenseInteger);
    if (!c.labels_path.empty()) {
        auto labels = open_input(c.labels_path, "label file");
        g = attach_labels(g, labels);
    }
    return g;
}

IterationOptions iteration_options(const RunConfig &c) {
    return {c.tol, c.max_iter, c.deterministic ? ExecutionMode::Deterministic : ExecutionMode::Parallel};
}

struct BothRanks {
    RankVector pagerank;
    RankVector cheirank;
};

BothRanks compute_ranks(const DirectedGraph &g, const RunConfig &c, Manifest &manifest) {
    BothRanks r{pagerank(g, c.alpha, iteration_options(c)), cheirank(g, c.alpha, iteration_options(c))};
    manifest.add("nodes", g.node_count());
    manifest.add("edges", g.edge_count());
    manifest.add_rank("pagerank", r.pagerank);
    manifest.add_rank("cheirank", r.cheirank);
    return r;
}

void require_converged(const BothRanks &r) {
    if (!r.pagerank.converged)
        fail(kNotConverged, "convergence",
             "PageRank did not converge (residual " + io::format_probability(r.pagerank.residual) + ")");
    if (!r.cheirank.converged)
        fail(kNotConverged, "convergence",
             "CheiRank did not converge (residual " + io::format_probability(r.cheirank.residual) + ")");
}

int run_rank(const RunConfig &c, std::ostream &out) {
    Manifest manifest;
    const DirectedGraph g = load_graph(c);
    const BothRanks r = compute_ranks(g, c, manifest);
    const double kappa = correlator(r.pagerank, r.cheirank);
    manifest.add("kappa", io::format_probability(kappa));

    OutputFile pr(c, "pagerank.tsv");
    io::write_rank_vector(*pr, g, r.pagerank, rank_index(r.pagerank));
    OutputFile ch(c, "cheirank.tsv");
    io::write_rank_vector(*ch, g, r.cheirank, rank_index(r.cheirank));
    manifest.write(c);
    require_converged(r);

    out << "kappa\t" << io::format_probability(kappa) << '\n';
    return kSuccess;
}

int run_correlator(const RunConfig &c, std::ostream &out) {
    Manifest manifest;
    const DirectedGraph g = load_graph(c);
    const BothRanks r = compute_ranks(g, c, manifest);
    const double kappa = correlator(r.pagerank, r.cheirank);
    manifest.add("kappa", io::format_probability(kappa));
    manifest.write(c);
    require_converged(r);
    out << "kappa\t" << io::format_probability(kappa) << '\n';
    return kSuccess;
}

int run_twodrank(const RunConfig &c, std::ostream &out) {
    Manifest manifest;
    const DirectedGraph g = load_graph(c);
    const BothRanks r = compute_ranks(g, c, manifest);
    require_converged(r);
    const RankPlane plane = make_rank_plane(rank_index(r.pagerank), rank_index(r.cheirank));

    OutputFile file(c, "twodrank.tsv");
    *file << "k2\tnode_id\tK\tK_star\n";
    for (std::size_t k = 0; k < plane.two_d_order.size(); ++k) {
        const NodeId n = plane.two_d_order[k];
        *file << (k + 1) << '\t' << g.external_id(n) << '\t' << plane.pagerank.rank_of(n) << '\t'
              << plane.cheirank.rank_of(n) << '\n';
    }
    manifest.write(c);
    out << "nodes\t" << g.node_count() << '\n';
    return kSuccess;
}

int run_density(const RunConfig &c, std::ostream &out) {
    Manifest manifest;
    const DirectedGraph g = load_graph(c);
    if (g.node_count() < 2)
        fail(kInvalidInput, "validation", "density grid needs at least two nodes");
    const BothRanks r = compute_ranks(g, c, manifest);
    require_converged(r);
    const RankPlane plane = make_rank_plane(rank_index(r.pagerank), rank_index(r.cheirank));
    const DensityGrid grid = density_grid(plane, c.bins);

    OutputFile file(c, "density.tsv");
    io::write_density_grid(*file, grid);
    manifest.add("bins", c.bins);
    manifest.write(c);
    out << "cells\t" << c.bins << 'x' << c.bins << "\ttotal\t" << grid.total() << '\n';
    return kSuccess;
}

void write_fit_row(std::ostream &out, std::string_view name, const PowerLawFit &f) {
    out << name << '\t' << io::format_probability(f.exponent) << '\t' << io::format_probability(f.amplitude) << '\t'
        << io::format_probability(f.stderr_exponent) << '\t' << f.k_min << '\t' << f.k_max << '\t' << f.points
        << '\n';
}

constexpr std::string_view kFitColumns = "vector\texponent\tamplitude\tstderr\tk_min\tk_max\tpoints\n";

int run_fit(const RunConfig &c, std::ostream &out) {
    Manifest manifest;
    std::vector<std::pair<std::string, PowerLawFit>> fits;
    if (!c.vector_path.empty()) {
        auto in = open_input(c.vector_path, "vector file");
        const std::vector<double> by_rank = io::read_rank_probabilities(in);
        fits.emplace_back(c.vector_path.filename().string(), fit_power_law(by_rank, c.k_min, c.k_max));
    } else {
        const DirectedGraph g = load_graph(c);
        const BothRanks r = compute_ranks(g, c, manifest);
        require_converged(r);
        fits.emplace_back("pagerank", fit_power_law(r.pagerank, rank_index(r.pagerank), c.k_min, c.k_max));
        fits.emplace_back("cheirank", fit_power_law(r.cheirank, rank_index(r.cheirank), c.k_min, c.k_max));
    }

    OutputFile file(c, "fit.tsv");
    *file << kFitColumns;
    out << kFitColumns;
    for (const auto &[name, f] : fits) {
        write_fit_row(*file, name, f);
        write_fit_row(out, name, f);
        manifest.add(name + "_exponent", io::format_probability(f.exponent));
    }
    manifest.write(c);
    return kSuccess;
}

std::string file_tag(Algorithm a) {
    switch (a) {
    case Algorithm::PageRank:
        return "pagerank";
    case Algorithm::CheiRank:
        return "cheirank";
    case Algorithm::TwoDRank:
        return "2drank";
    }
    return "unknown";
}

void write_matrix(std::ostream &out, const DenseMatrix &m, const RankIndex &order) {
    out << "culture";
    for (NodeId n : order.order)
        out << '\t' << to_string(static_cast<Culture>(n));
    out << '\n';
    for (std::size_t row = 0; row < m.size(); ++row) {
        out << to_string(static_cast<Culture>(order.order[row]));
        for (std::size_t col = 0; col < m.size(); ++col)
            out << '\t' << io::format_probability(m(row, col));
        out << '\n';
    }
}

// Local vs non-local citation statistics of one edition's PageRank persons.
void run_contribution(const RunConfig &c, const PersonLists &lists, Manifest &manifest, std::ostream &out) {
    if (!c.edition)
        fail(kInvalidInput, "config", "--graph with culture requires --edition");
    const auto edition = parse_culture(*c.edition);
    if (!edition || *edition == Culture::WR)
        fail(kInvalidInput, "config", "unknown edition '" + *c.edition + "'");
    const TopPersonList *list = lists.find(*edition, Algorithm::PageRank);
    if (list == nullptr)
        fail(kInvalidInput, "validation", "no " + *c.edition + " PageRank list for contribution statistics");

    const DirectedGraph g = load_graph(c);
    const RankVector p = pagerank(g, c.alpha, iteration_options(c));
    manifest.add_rank("graph_pagerank", p);
    if (!p.converged)
        fail(kNotConverged, "convergence", "PageRank of --graph did not converge");

    std::vector<NodeId> local;
    std::vector<NodeId> non_local;
    std::vector<std::string> unresolved;
    for (const ListEntry &e : list->entries) {
        auto node = g.has_labels() ? g.find_label(e.person.name) : std::nullopt;
        if (!node)
            node = g.find_external_id(e.person.name);
        if (!node) {
            unresolved.push_back(e.person.name);
            continue;
        }
        (list->locality(e) == Locality::Local ? local : non_local).push_back(*node);
    }

    OutputFile file(c, "contribution.tsv");
    *file << "locality\tpersons\tlinks\tmedian_contribution\tmedian_in_degree\tno_in_links\n";
    const auto row = [&](std::string_view name, const std::vector<NodeId> &targets) {
        *file << name << '\t' << targets.size();
        if (targets.empty()) {
            *file << "\t0\tNA\tNA\t0\n";
            return;
        }
        const ContributionStats s = contribution_stats(g, p, targets);
        *file << '\t' << s.link_count << '\t'
              << (s.median_contribution ? io::format_probability(*s.median_contribution) : std::string("NA")) << '\t'
              << io::format_probability(s.median_in_degree) << '\t' << s.targets_without_links.size() << '\n';
    };
    row("local", local);
    row("non_local", non_local);
    for (const std::string &name : unresolved)
        *file << "# unresolved\t" << name << '\n';
    out << "contribution\t" << *c.edition << "\tunresolved\t" << unresolved.size() << '\n';
}

int run_culture(const RunConfig &c, std::ostream &out, std::ostream &err) {
    Manifest manifest;
    auto in = open_input(c.annotation_path, "annotation file");
    const PersonLists lists = load_annotations(in, c.top);
    manifest.add("lists", lists.lists().size());

    std::vector<Algorithm> present;
    for (Algorithm a : {Algorithm::PageRank, Algorithm::CheiRank, Algorithm::TwoDRank}) {
        if (!lists.for_algorithm(a).empty())
            present.push_back(a);
    }

    {
        OutputFile heroes(c, "local_heroes.tsv");
        *heroes << "edition\talgorithm\tposition\tlocal_rank\tname\tactivity\n";
        for (Algorithm a : present) {
            for (const TopPersonList *list : lists.for_algorithm(a)) {
                const LocalHeroes h = local_heroes(lists, list->edition, a, c.heroes);
                for (std::size_t i = 0; i < h.heroes.size(); ++i) {
                    const ListEntry &e = h.heroes[i];
                    *heroes << to_string(list->edition) << '\t' << to_string(a) << '\t' << (i + 1) << '\t'
                            << e.local_rank << '\t' << e.person.name << '\t' << to_string(e.person.activity) << '\n';
                }
                if (h.shortfall)
                    *heroes << "# shortfall\t" << to_string(list->edition) << '\t' << to_string(a) << '\t'
                            << h.heroes.size() << '\n';
            }
        }
    }

    for (Algorithm a : present) {
        const std::string tag = file_tag(a);

        const ActivityDistribution dist = activity_distribution(lists, a);
        {
            OutputFile file(c, "activity_" + tag + ".tsv");
            *file << "edition";
            for (std::size_t i = 0; i < kActivityCount; ++i)
                *file << '\t' << to_string(static_cast<Activity>(i));
            *file << '\n';
            for (const auto &[edition, row] : dist.percentages) {
                *file << to_string(edition);
                for (double v : row)
                    *file << '\t' << io::format_probability(v);
                *file << '\n';
            }
            for (Culture missing : dist.missing_editions)
                *file << "# missing\t" << to_string(missing) << '\n';
        }

        {
            OutputFile file(c, "global_heroes_" + tag + ".tsv");
            *file << "position\tname\ttheta\tappearances\n";
            const auto heroes = global_hero_score(lists, a);
            for (std::size_t i = 0; i < heroes.size(); ++i)
                *file << (i + 1) << '\t' << heroes[i].name << '\t' << heroes[i].theta << '\t'
                      << heroes[i].appearances << '\n';
        }

        if (lists.for_algorithm(a).size() >= 2) {
            const double overlap = overlap_fraction(lists, a);
            manifest.add("overlap_" + tag, io::format_probability(overlap));
            out << "overlap\t" << to_string(a) << '\t' << io::format_probability(overlap) << '\n';
        }

        const CultureNetwork net = build_culture_network(lists, a);
        CultureRanks ranks;
        try {
            ranks = culture_rank(net, c.alpha, iteration_options(c));
        } catch (const ValidationError &e) {
            err << "warning\t" << tag << "\t" << one_line(e.what()) << '\n';
            manifest.add("culture_network_" + tag, "degenerate");
            continue;
        }
        manifest.add_rank("culture_" + tag + "_pagerank", ranks.pagerank);
        manifest.add_rank("culture_" + tag + "_cheirank", ranks.cheirank);
        if (!ranks.pagerank.converged || !ranks.cheirank.converged)
            fail(kNotConverged, "convergence", "culture network ranks did not converge for " + tag);

        {
            OutputFile file(c, "culture_weights_" + tag + ".tsv");
            write_matrix(*file, in_rank_order(net.weight_matrix(), ranks.pagerank_index), ranks.pagerank_index);
        }
        {
            OutputFile file(c, "culture_google_" + tag + ".tsv");
            write_matrix(*file, in_rank_order(ranks.google, ranks.pagerank_index), ranks.pagerank_index);
        }
        {
            OutputFile file(c, "culture_ranks_" + tag + ".tsv");
            *file << "culture\tK\tK_star\tP\tP_star\n";
            for (NodeId n : ranks.pagerank_index.order)
                *file << to_string(static_cast<Culture>(n)) << '\t' << ranks.pagerank_index.rank_of(n) << '\t'
                      << ranks.cheirank_index.rank_of(n) << '\t'
                      << io::format_probability(ranks.pagerank.probabilities[n]) << '\t'
                      << io::format_probability(ranks.cheirank.probabilities[n]) << '\n';
        }
        {
            OutputFile file(c, "culture_fit_" + tag + ".tsv");
            *file << kFitColumns;
            const std::size_t k_max = std::min<std::size_t>(c.k_max, kCultureCount);
            write_fit_row(*file, "z", fit_power_law(ranks.pagerank, ranks.pagerank_index, c.k_min, k_max));
            write_fit_row(*file, "z_star", fit_power_law(ranks.cheirank, ranks.cheirank_index, c.k_min, k_max));
        }
    }

    if (!c.graph_path.empty())
        run_contribution(c, lists, manifest, out);

    manifest.write(c);
    out << "lists\t" << lists.lists().size() << '\n';
    return kSuccess;
}

} // namespace

std::string_view command_name(Command c) {
    switch (c) {
    case Command::Rank:
        return "rank";
    case Command::TwoDRank:
        return "twodrank";
    case Command::Density:
        return "density";
    case Command::Correlator:
        return "correlator";
    case Command::Fit:
        return "fit";
    case Command::Culture:
        return "culture";
    }
    return "?";
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        validate(config);
        std::error_code ec;
        fs::create_directories(config.output_path, ec);
        if (ec)
            fail(kInvalidInput, "io", "cannot create output directory " + config.output_path.string());
        switch (config.command) {
        case Command::Rank:
            return run_rank(config, out);
        case Command::TwoDRank:
            return run_twodrank(config, out);
        case Command::Density:
            return run_density(config, out);
        case Command::Correlator:
            return run_correlator(config, out);
        case Command::Fit:
            return run_fit(config, out);
        case Command::Culture:
            return run_culture(config, out, err);
        }
        return kSuccess;
    } catch (const RunFailure &f) {
        err << "error\t" << f.kind << '\t' << one_line(f.message) << '\n';
        return f.code;
    } catch (const ParseError &e) {
        err << "error\tparse\t" << one_line(e.what()) << '\n';
    } catch (const ValidationError &e) {
        err << "error\tvalidation\t" << one_line(e.what()) << '\n';
    } catch (const InsufficientData &e) {
        err << "error\tinsufficient-data\t" << one_line(e.what()) << '\n';
    } catch (const ContractViolation &e) {
        err << "error\tcontract\t" << one_line(e.what()) << '\n';
    }
    return kInvalidInput;
}

int main(int argc, char **argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Google-matrix ranking toolkit: PageRank, CheiRank, 2DRank and culture networks", "gmrank"};
    app.require_subcommand(1);

    RunConfig config;

    const auto add_iteration = [&](CLI::App *sub) {
        sub->add_option("--alpha", config.alpha, "Damping factor in (0, 1)")->capture_default_str();
        sub->add_option("--tol", config.tol, "L1 convergence tolerance")->capture_default_str();
        sub->add_option("--max-iter", config.max_iter, "Iteration limit")->capture_default_str();
        sub->add_flag("--deterministic", config.deterministic, "Sequential reductions, bit-identical runs");
    };
    const auto add_graph = [&](CLI::App *sub, bool required) {
        auto *opt = sub->add_option("graph", config.graph_path, "Edge list (source target per line)");
        if (required)
            opt->required();
        sub->add_option("--labels", config.labels_path, "Label file: node_id<TAB>title");
        sub->add_flag("--string-ids", config.string_ids, "Identifiers are arbitrary strings");
    };
    const auto add_output = [&](CLI::App *sub) {
        sub->add_option("--output,-o", config.output_path, "Output directory")->capture_default_str();
    };

    struct Sub {
        Command command;
        const char *description;
    };
    const Sub subs[] = {
        {Command::Rank, "PageRank and CheiRank vectors plus the correlator"},
        {Command::TwoDRank, "2DRank permutation"},
        {Command::Density, "Log-binned (K, K*) density grid"},
        {Command::Correlator, "Correlator between PageRank and CheiRank"},
        {Command::Fit, "Power-law exponent of rank-ordered probabilities"},
        {Command::Culture, "Person-list statistics and the network of cultures"},
    };
    for (const Sub &s : subs) {
        CLI::App *sub = app.add_subcommand(std::string(command_name(s.command)), s.description);
        sub->callback([&config, cmd = s.command] { config.command = cmd; });
        add_iteration(sub);
        add_output(sub);
        switch (s.command) {
        case Command::Density:
            add_graph(sub, true);
            sub->add_option("--bins", config.bins, "Cells per axis")->capture_default_str();
            break;
        case Command::Fit:
            add_graph(sub, false);
            sub->add_option("--vector", config.vector_path, "Rank-vector file to fit instead of a graph");
            sub->add_option("--k-min,--kmin", config.k_min, "First rank in the fit")->capture_default_str();
            sub->add_option("--k-max,--kmax", config.k_max, "Last rank in the fit")->capture_default_str();
            break;
        case Command::Culture:
            sub->add_option("annotations", config.annotation_path, "Person annotation TSV")->required();
            sub->add_option("--top", config.top, "Nominal person-list length L")->capture_default_str();
            sub->add_option("--heroes", config.heroes, "Local heroes per list")->capture_default_str();
            sub->add_option("--graph", config.graph_path, "Edition graph for citation statistics");
            sub->add_option("--labels", config.labels_path, "Label file for --graph");
            sub->add_flag("--string-ids", config.string_ids, "Identifiers in --graph are arbitrary strings");
            sub->add_option("--edition", config.edition, "Edition --graph belongs to (e.g. EN)");
            sub->add_option("--k-min,--kmin", config.k_min, "First rank in culture fits")->capture_default_str();
            sub->add_option("--k-max,--kmax", config.k_max, "Last rank in culture fits")->capture_default_str();
            break;
        default:
            add_graph(sub, true);
            break;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error\tusage\t" << one_line(e.what()) << '\n';
        return kInvalidInput;
    }

    if (config.command == Command::Fit && config.graph_path.empty() && config.vector_path.empty()) {
        err << "error\tusage\tfit needs a graph or --vector\n";
        return kInvalidInput;
    }
    return run(config, out, err);
}

} // namespace gmrank::cli
