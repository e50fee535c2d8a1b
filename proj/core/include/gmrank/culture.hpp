#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmrank/google_matrix.hpp"
#include "gmrank/graph.hpp"
#include "gmrank/ranking.hpp"

namespace gmrank {

enum class Activity { Politics, Science, Art, Religion, Sport, Etc };
inline constexpr std::size_t kActivityCount = 6;

/// The nine encyclopedia editions plus WR for everything else.
enum class Culture { EN, FR, DE, IT, ES, NL, RU, HU, KO, WR };
inline constexpr std::size_t kCultureCount = 10;
inline constexpr std::array<Culture, 9> kEditions = {Culture::EN, Culture::FR, Culture::DE, Culture::IT, Culture::ES,
                                                     Culture::NL, Culture::RU, Culture::HU, Culture::KO};

enum class Algorithm { PageRank, CheiRank, TwoDRank };

std::string_view to_string(Activity a);
std::string_view to_string(Culture c);
std::string_view to_string(Algorithm a);

// Case-insensitive. "2DRank" and "TwoDRank" both name the 2D ranking.
std::optional<Activity> parse_activity(std::string_view token);
std::optional<Culture> parse_culture(std::string_view token);
std::optional<Algorithm> parse_algorithm(std::string_view token);

struct PersonAnnotation {
    std::string name;
    Activity activity = Activity::Etc;
    Culture culture = Culture::WR;
};

struct ListEntry {
    Rank local_rank = 0; // R, 1-based
    PersonAnnotation person;
};

enum class Locality { Local, NonLocal };

struct TopPersonList {
    Culture edition = Culture::EN;
    Algorithm algorithm = Algorithm::PageRank;
    std::vector<ListEntry> entries; // ascending local_rank

    Locality locality(const ListEntry &e) const {
        return e.person.culture == edition ? Locality::Local : Locality::NonLocal;
    }
};

inline constexpr std::size_t kDefaultListLength = 30;

/// Validated set of top-person lists, at most one per (edition, algorithm).
///
/// `list_length` is L, the nominal list size. Lists may be shorter (fixtures
/// often are) but never longer, and the hero score uses L + 1 - R per entry.
class PersonLists {
public:
    explicit PersonLists(std::vector<TopPersonList> lists, std::size_t list_length = kDefaultListLength);

    std::size_t list_length() const noexcept { return list_length_; }
    std::span<const TopPersonList> lists() const noexcept { return lists_; }

    const TopPersonList *find(Culture edition, Algorithm algorithm) const;
    std::vector<const TopPersonList *> for_algorithm(Algorithm algorithm) const;

private:
    std::vector<TopPersonList> lists_;
    std::size_t list_length_;
};

/// Tab-separated annotations with a mandatory header line:
///   edition  algorithm  local_rank  name  activity  culture
/// Lines starting with '#' and blank lines are ignored. Throws ParseError for
/// malformed rows and ValidationError for rule violations (unknown tokens,
/// duplicate ranks, rank gaps).
PersonLists load_annotations(std::istream &in, std::size_t list_length = kDefaultListLength);

struct ActivityDistribution {
    // Percentages indexed by Activity, summing to 100 for each edition present.
    std::map<Culture, std::array<double, kActivityCount>> percentages;
    std::vector<Culture> missing_editions;
};

ActivityDistribution activity_distribution(const PersonLists &lists, Algorithm algorithm);

/// Share (percent) of distinct persons that appear in two or more editions'
/// lists for `algorithm`. Requires at least two editions.
double overlap_fraction(const PersonLists &lists, Algorithm algorithm);

struct LocalHeroes {
    std::vector<ListEntry> heroes;
    bool shortfall = false; // fewer than the requested number of local persons
};

/// First `top_n` entries whose culture matches the edition, by ascending R.
/// Throws ValidationError if the list does not exist.
LocalHeroes local_heroes(const PersonLists &lists, Culture edition, Algorithm algorithm, std::size_t top_n = 3);

struct GlobalHero {
    std::string name;
    long theta = 0;       // sum over editions of (L + 1 - R)
    int appearances = 0;  // N_A
};

/// Sorted by descending theta, then descending appearances, then name.
std::vector<GlobalHero> global_hero_score(const PersonLists &lists, Algorithm algorithm);

/// weights[a][b] = persons of culture b in edition a's list; diagonal is 0.
/// Row and column order follow the Culture enumeration.
struct CultureNetwork {
    std::array<std::array<int, kCultureCount>, kCultureCount> weights{};
    std::array<int, kCultureCount> local_counts{}; // dropped diagonal, per edition

    DenseMatrix weight_matrix() const;
};

CultureNetwork build_culture_network(const PersonLists &lists, Algorithm algorithm);

struct CultureRanks {
    RankVector pagerank;
    RankVector cheirank;
    RankIndex pagerank_index;
    RankIndex cheirank_index;
    DenseMatrix google;      // G of the culture network, natural culture order
    DenseMatrix google_star; // G* built on the inverted network
};

/// PageRank and CheiRank of the 10-node culture network. Throws
/// ValidationError if every weight is zero.
CultureRanks culture_rank(const CultureNetwork &net, double alpha = kDefaultAlpha,
                          const IterationOptions &options = {});

/// m permuted so that row/column k holds the node at rank k + 1.
DenseMatrix in_rank_order(const DenseMatrix &m, const RankIndex &index);

struct ContributionStats {
    std::optional<double> median_contribution; // empty when no target has an in-link
    double median_in_degree = 0.0;
    std::size_t link_count = 0;
    std::vector<NodeId> targets_without_links;
};

/// Pools P(j) / k_out(j) over every link j -> i with i in `targets` and takes
/// the median; also the median in-degree of the targets.
ContributionStats contribution_stats(const DirectedGraph &g, const RankVector &pagerank,
                                     std::span<const NodeId> targets);

/// Median of a non-empty sample (mean of the middle pair for even sizes).
double median(std::vector<double> values);

} // namespace gmrank
