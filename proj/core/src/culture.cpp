#include "gmrank/culture.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <tuple>

#include "gmrank/error.hpp"

namespace gmrank {

namespace {

constexpr std::array<std::string_view, kActivityCount> kActivityNames = {"politics", "science", "art",
                                                                         "religion", "sport",   "etc"};
constexpr std::array<std::string_view, kCultureCount> kCultureNames = {"EN", "FR", "DE", "IT", "ES",
                                                                       "NL", "RU", "HU", "KO", "WR"};

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return !std::isspace(static_cast<unsigned char>(c)); };
    const auto first = std::find_if(s.begin(), s.end(), not_space);
    const auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
    return first < last ? std::string_view(first, last) : std::string_view{};
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        fields.push_back(trim(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start)));
        if (tab == std::string_view::npos)
            break;
        start = tab + 1;
    }
    return fields;
}

std::string list_name(Culture edition, Algorithm algorithm) {
    return std::string(to_string(edition)) + " " + std::string(to_string(algorithm));
}

std::size_t index_of(Culture c) { return static_cast<std::size_t>(c); }

} // namespace

std::string_view to_string(Activity a) { return kActivityNames[static_cast<std::size_t>(a)]; }

std::string_view to_string(Culture c) { return kCultureNames[index_of(c)]; }

std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::PageRank:
        return "PageRank";
    case Algorithm::CheiRank:
        return "CheiRank";
    case Algorithm::TwoDRank:
        return "2DRank";
    }
    return "?";
}

std::optional<Activity> parse_activity(std::string_view token) {
    for (std::size_t i = 0; i < kActivityNames.size(); ++i) {
        if (iequals(token, kActivityNames[i]))
            return static_cast<Activity>(i);
    }
    return std::nullopt;
}

std::optional<Culture> parse_culture(std::string_view token) {
    for (std::size_t i = 0; i < kCultureNames.size(); ++i) {
        if (iequals(token, kCultureNames[i]))
            return static_cast<Culture>(i);
    }
    return std::nullopt;
}

std::optional<Algorithm> parse_algorithm(std::string_view token) {
    if (iequals(token, "PageRank"))
        return Algorithm::PageRank;
    if (iequals(token, "CheiRank"))
        return Algorithm::CheiRank;
    if (iequals(token, "2DRank") || iequals(token, "TwoDRank"))
        return Algorithm::TwoDRank;
    return std::nullopt;
}

PersonLists::PersonLists(std::vector<TopPersonList> lists, std::size_t list_length)
    : lists_(std::move(lists)), list_length_(list_length) {
    if (list_length_ < 1)
        throw ContractViolation("PersonLists: list length must be at least 1");
    std::set<std::pair<Culture, Algorithm>> seen;
    for (TopPersonList &list : lists_) {
        const std::string name = list_name(list.edition, list.algorithm);
        if (list.edition == Culture::WR)
            throw ValidationError(name + ": WR is not an edition");
        if (!seen.insert({list.edition, list.algorithm}).second)
            throw ValidationError(name + ": list given twice");
        if (list.entries.empty())
            throw ValidationError(name + ": empty list");
        if (list.entries.size() > list_length_)
            throw ValidationError(name + ": " + std::to_string(list.entries.size()) +
                                  " entries exceed list length " + std::to_string(list_length_));
        std::sort(list.entries.begin(), list.entries.end(),
                  [](const ListEntry &a, const ListEntry &b) { return a.local_rank < b.local_rank; });
        std::set<std::string> names;
        for (std::size_t i = 0; i < list.entries.size(); ++i) {
            if (list.entries[i].local_rank != i + 1)
                throw ValidationError(name + ": local ranks must run 1.." + std::to_string(list.entries.size()) +
                                      " without gaps (rank " + std::to_string(i + 1) + " missing)");
            if (!names.insert(list.entries[i].person.name).second)
                throw ValidationError(name + ": person '" + list.entries[i].person.name + "' listed twice");
        }
    }
}

const TopPersonList *PersonLists::find(Culture edition, Algorithm algorithm) const {
    for (const TopPersonList &list : lists_) {
        if (list.edition == edition && list.algorithm == algorithm)
            return &list;
    }
    return nullptr;
}

std::vector<const TopPersonList *> PersonLists::for_algorithm(Algorithm algorithm) const {
    std::vector<const TopPersonList *> result;
    for (Culture edition : kEditions) {
        if (const TopPersonList *list = find(edition, algorithm))
            result.push_back(list);
    }
    return result;
}

PersonLists load_annotations(std::istream &in, std::size_t list_length) {
    static constexpr std::array<std::string_view, 6> kHeader = {"edition", "algorithm", "local_rank",
                                                                "name",    "activity",  "culture"};
    std::vector<TopPersonList> lists;
    std::set<std::tuple<Culture, Algorithm, Rank>> ranks_seen;
    bool header_seen = false;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        const std::string_view line = raw;
        if (trim(line).empty() || trim(line).front() == '#')
            continue;

        const auto fields = split_tabs(line);
        if (!header_seen) {
            const bool is_header = fields.size() == kHeader.size() &&
                                   std::equal(fields.begin(), fields.end(), kHeader.begin(), iequals);
            if (!is_header)
                throw ParseError(line_no, "missing header 'edition\\talgorithm\\tlocal_rank\\tname\\tactivity\\tculture'");
            header_seen = true;
            continue;
        }
        if (fields.size() != kHeader.size())
            throw ParseError(line_no, "expected 6 tab-separated fields, found " + std::to_string(fields.size()));

        const auto fail = [&](const std::string &what) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + what);
        };
        const auto edition = parse_culture(fields[0]);
        if (!edition || *edition == Culture::WR)
            fail("unknown edition '" + std::string(fields[0]) + "'");
        const auto algorithm = parse_algorithm(fields[1]);
        if (!algorithm)
            fail("unknown algorithm '" + std::string(fields[1]) + "'");
        Rank rank = 0;
        const auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), rank);
        if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size() || rank < 1)
            throw ParseError(line_no, "local_rank '" + std::string(fields[2]) + "' is not a positive integer");
        if (fields[3].empty())
            fail("empty person name");
        const auto activity = parse_activity(fields[4]);
        if (!activity)
            fail("unknown activity '" + std::string(fields[4]) + "'");
        const auto culture = parse_culture(fields[5]);
        if (!culture)
            fail("unknown culture '" + std::string(fields[5]) + "'");
        if (!ranks_seen.insert({*edition, *algorithm, rank}).second)
            fail("duplicate rank " + std::to_string(rank) + " for " + list_name(*edition, *algorithm));

        auto it = std::find_if(lists.begin(), lists.end(), [&](const TopPersonList &l) {
            return l.edition == *edition && l.algorithm == *algorithm;
        });
        if (it == lists.end()) {
            lists.push_back({*edition, *algorithm, {}});
            it = std::prev(lists.end());
        }
        it->entries.push_back({rank, PersonAnnotation{std::string(fields[3]), *activity, *culture}});
    }
    if (!header_seen)
        throw ParseError(line_no, "annotation file has no header");
    return PersonLists(std::move(lists), list_length);
}

ActivityDistribution activity_distribution(const PersonLists &lists, Algorithm algorithm) {
    ActivityDistribution dist;
    for (Culture edition : kEditions) {
        const TopPersonList *list = lists.find(edition, algorithm);
        if (list == nullptr) {
            dist.missing_editions.push_back(edition);
            continue;
        }
        std::array<std::size_t, kActivityCount> counts{};
        for (const ListEntry &e : list->entries)
            ++counts[static_cast<std::size_t>(e.person.activity)];
        auto &row = dist.percentages[edition];
        for (std::size_t a = 0; a < kActivityCount; ++a)
            row[a] = 100.0 * static_cast<double>(counts[a]) / static_cast<double>(list->entries.size());
    }
    return dist;
}

double overlap_fraction(const PersonLists &lists, Algorithm algorithm) {
    const auto selected = lists.for_algorithm(algorithm);
    if (selected.size() < 2)
        throw ContractViolation("overlap_fraction: need lists from at least two editions");
    std::map<std::string, int> editions_per_person;
    for (const TopPersonList *list : selected) {
        for (const ListEntry &e : list->entries)
            ++editions_per_person[e.person.name];
    }
    std::size_t overlapping = 0;
    for (const auto &[name, count] : editions_per_person) {
        if (count >= 2)
            ++overlapping;
    }
    return 100.0 * static_cast<double>(overlapping) / static_cast<double>(editions_per_person.size());
}

LocalHeroes local_heroes(const PersonLists &lists, Culture edition, Algorithm algorithm, std::size_t top_n) {
    const TopPersonList *list = lists.find(edition, algorithm);
    if (list == nullptr)
        throw ValidationError("no " + list_name(edition, algorithm) + " list loaded");
    LocalHeroes result;
    for (const ListEntry &e : list->entries) {
        if (result.heroes.size() == top_n)
            break;
        if (list->locality(e) == Locality::Local)
            result.heroes.push_back(e);
    }
    result.shortfall = result.heroes.size() < top_n;
    return result;
}

std::vector<GlobalHero> global_hero_score(const PersonLists &lists, Algorithm algorithm) {
    const long top = static_cast<long>(lists.list_length()) + 1;
    std::map<std::string, GlobalHero> by_name;
    for (const TopPersonList *list : lists.for_algorithm(algorithm)) {
        for (const ListEntry &e : list->entries) {
            GlobalHero &hero = by_name[e.person.name];
            hero.name = e.person.name;
            hero.theta += top - static_cast<long>(e.local_rank);
            ++hero.appearances;
        }
    }
    std::vector<GlobalHero> heroes;
    heroes.reserve(by_name.size());
    for (auto &[name, hero] : by_name)
        heroes.push_back(std::move(hero));
    std::sort(heroes.begin(), heroes.end(), [](const GlobalHero &a, const GlobalHero &b) {
        if (a.theta != b.theta)
            return a.theta > b.theta;
        if (a.appearances != b.appearances)
            return a.appearances > b.appearances;
        return a.name < b.name;
    });
    return heroes;
}

DenseMatrix CultureNetwork::weight_matrix() const {
    DenseMatrix m(kCultureCount);
    for (std::size_t a = 0; a < kCultureCount; ++a)
        for (std::size_t b = 0; b < kCultureCount; ++b)
            m(a, b) = weights[a][b];
    return m;
}

CultureNetwork build_culture_network(const PersonLists &lists, Algorithm algorithm) {
    CultureNetwork net;
    for (const TopPersonList *list : lists.for_algorithm(algorithm)) {
        const std::size_t from = index_of(list->edition);
        for (const ListEntry &e : list->entries) {
            if (list->locality(e) == Locality::Local)
                ++net.local_counts[from];
            else
                ++net.weights[from][index_of(e.person.culture)];
        }
    }
    return net;
}

CultureRanks culture_rank(const CultureNetwork &net, double alpha, const IterationOptions &options) {
    bool any = false;
    for (const auto &row : net.weights)
        for (int w : row)
            any = any || w > 0;
    if (!any)
        throw ValidationError("culture network has no cross-culture links");

    const DenseMatrix weights = net.weight_matrix();
    const DenseGoogleMatrix g(weights, alpha);
    const DenseGoogleMatrix g_star(weights.transposed(), alpha);

    CultureRanks ranks;
    ranks.pagerank = power_iterate(g, RankKind::PageRank, options);
    ranks.cheirank = power_iterate(g_star, RankKind::CheiRank, options);
    ranks.pagerank_index = rank_index(ranks.pagerank);
    ranks.cheirank_index = rank_index(ranks.cheirank);
    ranks.google = g.matrix();
    ranks.google_star = g_star.matrix();
    return ranks;
}

DenseMatrix in_rank_order(const DenseMatrix &m, const RankIndex &index) {
    if (m.size() != index.size())
        throw ContractViolation("in_rank_order: matrix and index differ in size");
    DenseMatrix result(m.size());
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b)
            result(a, b) = m(index.order[a], index.order[b]);
    return result;
}

double median(std::vector<double> values) {
    if (values.empty())
        throw ContractViolation("median: empty sample");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1)
        return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return lower + (upper - lower) / 2.0;
}

ContributionStats contribution_stats(const DirectedGraph &g, const RankVector &pagerank,
                                     std::span<const NodeId> targets) {
    if (targets.empty())
        throw ContractViolation("contribution_stats: no targets");
    if (pagerank.size() != g.node_count())
        throw ContractViolation("contribution_stats: rank vector does not match graph");

    ContributionStats stats;
    std::vector<double> contributions;
    std::vector<double> in_degrees;
    for (NodeId target : targets) {
        if (target >= g.node_count())
            throw ContractViolation("contribution_stats: target out of range");
        in_degrees.push_back(g.in_degree(target));
        if (g.in_degree(target) == 0) {
            stats.targets_without_links.push_back(target);
            continue;
        }
        for (NodeId source : g.in_neighbors(target))
            contributions.push_back(pagerank.probabilities[source] / static_cast<double>(g.out_degree(source)));
    }
    stats.link_count = contributions.size();
    if (!contributions.empty())
        stats.median_contribution = median(std::move(contributions));
    stats.median_in_degree = median(std::move(in_degrees));
    return stats;
}

} // namespace gmrank
