#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <sstream>

#include "gmrank/culture.hpp"
#include "gmrank/error.hpp"

using namespace gmrank;

namespace {

std::string data_path(const std::string &name) { return std::string(GMRANK_TEST_DATA_DIR) + "/" + name; }

PersonLists load_fixture(const std::string &name, std::size_t list_length = kDefaultListLength) {
    std::ifstream in(data_path(name));
    if (!in)
        throw std::runtime_error("missing fixture " + name);
    return load_annotations(in, list_length);
}

PersonLists load_text(const std::string &body) {
    std::istringstream in("edition\talgorithm\tlocal_rank\tname\tactivity\tculture\n" + body);
    return load_annotations(in);
}

ListEntry entry(Rank r, std::string name, Culture c, Activity a = Activity::Politics) {
    return {r, {std::move(name), a, c}};
}

std::size_t idx(Culture c) { return static_cast<std::size_t>(c); }

std::size_t idx(Activity a) { return static_cast<std::size_t>(a); }

} // namespace

TEST(Tokens, RoundTripAndCaseInsensitivity) {
    EXPECT_EQ(parse_activity("Politics"), Activity::Politics);
    EXPECT_EQ(parse_activity("etc"), Activity::Etc);
    EXPECT_FALSE(parse_activity("music").has_value());
    EXPECT_EQ(parse_culture("wr"), Culture::WR);
    EXPECT_FALSE(parse_culture("PL").has_value());
    EXPECT_EQ(parse_algorithm("2DRank"), Algorithm::TwoDRank);
    EXPECT_EQ(parse_algorithm(to_string(Algorithm::CheiRank)), Algorithm::CheiRank);
    for (std::size_t c = 0; c < kCultureCount; ++c)
        EXPECT_EQ(parse_culture(to_string(static_cast<Culture>(c))), static_cast<Culture>(c));
}

TEST(LoadAnnotations, EnglishTopTenFirstRow) {
    const PersonLists lists = load_fixture("en_pagerank_top10.tsv");
    const TopPersonList *en = lists.find(Culture::EN, Algorithm::PageRank);
    ASSERT_NE(en, nullptr);
    ASSERT_EQ(en->entries.size(), 10u);
    const ListEntry &first = en->entries.front();
    EXPECT_EQ(first.local_rank, 1u);
    EXPECT_EQ(first.person.name, "Napoleon");
    EXPECT_EQ(first.person.activity, Activity::Politics);
    EXPECT_EQ(first.person.culture, Culture::FR);
    EXPECT_EQ(en->locality(first), Locality::NonLocal);
}

TEST(LoadAnnotations, JesusIsNonLocalWorldCulture) {
    const PersonLists lists = load_fixture("en_pagerank_top10.tsv");
    const ListEntry &jesus = lists.find(Culture::EN, Algorithm::PageRank)->entries[5];
    EXPECT_EQ(jesus.person.name, "Jesus");
    EXPECT_EQ(jesus.person.culture, Culture::WR);
    EXPECT_EQ(jesus.person.activity, Activity::Religion);
    EXPECT_EQ(lists.find(Culture::EN, Algorithm::PageRank)->locality(jesus), Locality::NonLocal);
}

TEST(LoadAnnotations, RankGapIsRejected) {
    EXPECT_THROW(load_text("EN\tPageRank\t1\tA\tart\tEN\n"
                           "EN\tPageRank\t2\tB\tart\tEN\n"
                           "EN\tPageRank\t4\tC\tart\tEN\n"),
                 ValidationError);
}

TEST(LoadAnnotations, UnknownTokensNameTheLine) {
    try {
        load_text("EN\tPageRank\t1\tA\tart\tEN\nEN\tPageRank\t2\tB\tmusic\tEN\n");
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find("music"), std::string::npos);
    }
    EXPECT_THROW(load_text("EN\tPageRank\t1\tA\tart\tPL\n"), ValidationError);
    EXPECT_THROW(load_text("XX\tPageRank\t1\tA\tart\tEN\n"), ValidationError);
    EXPECT_THROW(load_text("WR\tPageRank\t1\tA\tart\tEN\n"), ValidationError);
    EXPECT_THROW(load_text("EN\tHITS\t1\tA\tart\tEN\n"), ValidationError);
}

TEST(LoadAnnotations, DuplicateRankIsRejected) {
    EXPECT_THROW(load_text("EN\tPageRank\t1\tA\tart\tEN\nEN\tPageRank\t1\tB\tart\tEN\n"), ValidationError);
    // Same rank in a different list is fine.
    EXPECT_NO_THROW(load_text("EN\tPageRank\t1\tA\tart\tEN\nEN\tCheiRank\t1\tB\tart\tEN\n"));
}

TEST(LoadAnnotations, StructuralErrors) {
    std::istringstream no_header("EN\tPageRank\t1\tA\tart\tEN\n");
    EXPECT_THROW(load_annotations(no_header), ParseError);
    EXPECT_THROW(load_text("EN\tPageRank\t1\tA\tart\n"), ParseError);
    EXPECT_THROW(load_text("EN\tPageRank\tfirst\tA\tart\tEN\n"), ParseError);
    EXPECT_THROW(load_text("EN\tPageRank\t0\tA\tart\tEN\n"), ParseError);
    std::istringstream empty("");
    EXPECT_THROW(load_annotations(empty), ParseError);
}

TEST(LoadAnnotations, ListLongerThanLIsRejected) {
    std::istringstream in("edition\talgorithm\tlocal_rank\tname\tactivity\tculture\n"
                          "EN\tPageRank\t1\tA\tart\tEN\nEN\tPageRank\t2\tB\tart\tEN\n");
    EXPECT_THROW(load_annotations(in, 1), ValidationError);
}

TEST(PersonLists, RejectsDuplicatePersonInList) {
    EXPECT_THROW(PersonLists({{Culture::EN, Algorithm::PageRank, {entry(1, "A", Culture::EN), entry(2, "A", Culture::EN)}}}),
                 ValidationError);
}

TEST(ActivityDistribution, EnglishTopTenFixture) {
    const ActivityDistribution d = activity_distribution(load_fixture("en_pagerank_top10.tsv"), Algorithm::PageRank);
    const auto &en = d.percentages.at(Culture::EN);
    EXPECT_DOUBLE_EQ(en[idx(Activity::Politics)], 60.0);
    EXPECT_DOUBLE_EQ(en[idx(Activity::Science)], 20.0);
    EXPECT_DOUBLE_EQ(en[idx(Activity::Religion)], 10.0);
    EXPECT_DOUBLE_EQ(en[idx(Activity::Art)], 10.0);
    EXPECT_DOUBLE_EQ(en[idx(Activity::Sport)], 0.0);
    EXPECT_DOUBLE_EQ(en[idx(Activity::Etc)], 0.0);
    EXPECT_EQ(d.missing_editions.size(), 8u);
}

TEST(ActivityDistribution, SingleAndSplitFields) {
    std::vector<ListEntry> politicians, mixed;
    for (Rank r = 1; r <= 30; ++r) {
        politicians.push_back(entry(r, "P" + std::to_string(r), Culture::FR, Activity::Politics));
        mixed.push_back(entry(r, "M" + std::to_string(r), Culture::DE, r <= 15 ? Activity::Art : Activity::Sport));
    }
    const PersonLists lists({{Culture::FR, Algorithm::CheiRank, politicians}, {Culture::DE, Algorithm::CheiRank, mixed}});
    const ActivityDistribution d = activity_distribution(lists, Algorithm::CheiRank);
    EXPECT_DOUBLE_EQ(d.percentages.at(Culture::FR)[idx(Activity::Politics)], 100.0);
    EXPECT_DOUBLE_EQ(d.percentages.at(Culture::DE)[idx(Activity::Art)], 50.0);
    EXPECT_DOUBLE_EQ(d.percentages.at(Culture::DE)[idx(Activity::Sport)], 50.0);
    for (const auto &[edition, row] : d.percentages)
        EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 100.0, 1e-12);
    EXPECT_EQ(d.missing_editions.size(), 7u);
}

TEST(OverlapFraction, IdenticalAndDisjoint) {
    std::vector<TopPersonList> same, disjoint;
    for (Culture e : kEditions) {
        std::vector<ListEntry> s, d;
        for (Rank r = 1; r <= 5; ++r) {
            s.push_back(entry(r, "Shared" + std::to_string(r), Culture::WR));
            d.push_back(entry(r, std::string(to_string(e)) + std::to_string(r), e));
        }
        same.push_back({e, Algorithm::PageRank, s});
        disjoint.push_back({e, Algorithm::PageRank, d});
    }
    EXPECT_DOUBLE_EQ(overlap_fraction(PersonLists(same), Algorithm::PageRank), 100.0);
    EXPECT_DOUBLE_EQ(overlap_fraction(PersonLists(disjoint), Algorithm::PageRank), 0.0);
}

TEST(OverlapFraction, CountsDistinctPersons) {
    // Distinct persons: Napoleon, Louis XIV, Bush, Jesus, Obama, Shakespeare,
    // Hitler, de Gaulle = 8; in both lists: Napoleon, Bush, Obama = 3.
    EXPECT_DOUBLE_EQ(overlap_fraction(load_fixture("culture_links.tsv"), Algorithm::PageRank), 100.0 * 3 / 8);
    EXPECT_THROW(overlap_fraction(load_fixture("en_pagerank_top10.tsv"), Algorithm::PageRank), ContractViolation);
}

TEST(LocalHeroes, EnglishPageRankFixture) {
    const LocalHeroes h = local_heroes(load_fixture("en_pagerank_top10.tsv"), Culture::EN, Algorithm::PageRank);
    ASSERT_EQ(h.heroes.size(), 3u);
    EXPECT_FALSE(h.shortfall);
    EXPECT_EQ(h.heroes[0].person.name, "George W. Bush");
    EXPECT_EQ(h.heroes[1].person.name, "Barack Obama");
    EXPECT_EQ(h.heroes[2].person.name, "Elizabeth II");
}

TEST(LocalHeroes, GermanFixtureStartsWithHitler) {
    const LocalHeroes h = local_heroes(load_fixture("de_pagerank.tsv"), Culture::DE, Algorithm::PageRank);
    ASSERT_FALSE(h.heroes.empty());
    EXPECT_EQ(h.heroes[0].person.name, "Adolf Hitler");
}

TEST(LocalHeroes, ShortfallWhenNoLocals) {
    const PersonLists lists({{Culture::NL, Algorithm::PageRank, {entry(1, "Napoleon", Culture::FR)}}});
    const LocalHeroes h = local_heroes(lists, Culture::NL, Algorithm::PageRank);
    EXPECT_TRUE(h.heroes.empty());
    EXPECT_TRUE(h.shortfall);
    EXPECT_THROW(local_heroes(lists, Culture::KO, Algorithm::PageRank), ValidationError);
}

TEST(GlobalHeroScore, MaximumIsNineTimesL) {
    std::vector<TopPersonList> lists;
    for (Culture e : kEditions)
        lists.push_back({e, Algorithm::PageRank, {entry(1, "Everywhere", Culture::WR), entry(2, "Local", e)}});
    const auto heroes = global_hero_score(PersonLists(lists), Algorithm::PageRank);
    ASSERT_FALSE(heroes.empty());
    EXPECT_EQ(heroes[0].name, "Everywhere");
    EXPECT_EQ(heroes[0].theta, 270);
    EXPECT_EQ(heroes[0].appearances, 9);
}

TEST(GlobalHeroScore, LastPlaceInOneEditionScoresOne) {
    std::vector<ListEntry> full;
    for (Rank r = 1; r <= 30; ++r)
        full.push_back(entry(r, "P" + std::to_string(r), Culture::EN));
    const auto heroes = global_hero_score(PersonLists({{Culture::EN, Algorithm::TwoDRank, full}}), Algorithm::TwoDRank);
    ASSERT_EQ(heroes.size(), 30u);
    EXPECT_EQ(heroes.back().name, "P30");
    EXPECT_EQ(heroes.back().theta, 1);
    EXPECT_EQ(heroes.back().appearances, 1);
}

TEST(GlobalHeroScore, NapoleonAtRankOneContributesThirty) {
    const auto heroes = global_hero_score(load_fixture("en_pagerank_top10.tsv"), Algorithm::PageRank);
    EXPECT_EQ(heroes[0].name, "Napoleon");
    EXPECT_EQ(heroes[0].theta, 30);
}

TEST(GlobalHeroScore, TieBreaksByAppearancesThenName) {
    // B: 29 + 1 = 30 over two editions; A and C: 30 in one edition.
    std::vector<ListEntry> en, fr;
    en.push_back(entry(1, "C", Culture::WR));
    en.push_back(entry(2, "B", Culture::WR));
    fr.push_back(entry(1, "A", Culture::WR));
    for (Rank r = 2; r <= 29; ++r)
        fr.push_back(entry(r, "F" + std::to_string(r), Culture::FR));
    fr.push_back(entry(30, "B", Culture::WR));
    const auto heroes =
        global_hero_score(PersonLists({{Culture::EN, Algorithm::PageRank, en}, {Culture::FR, Algorithm::PageRank, fr}}),
                          Algorithm::PageRank);
    EXPECT_EQ(heroes[0].name, "B");
    EXPECT_EQ(heroes[1].name, "A");
    EXPECT_EQ(heroes[2].name, "C");
}

TEST(GlobalHeroScore, AdditiveOverEditions) {
    const PersonLists both = load_fixture("culture_links.tsv");
    const PersonLists en_only({*both.find(Culture::EN, Algorithm::PageRank)});
    const auto with = global_hero_score(both, Algorithm::PageRank);
    const auto without = global_hero_score(en_only, Algorithm::PageRank);
    const TopPersonList &fr = *both.find(Culture::FR, Algorithm::PageRank);
    for (const GlobalHero &h : with) {
        long removed = 0;
        for (const ListEntry &e : fr.entries)
            if (e.person.name == h.name)
                removed = 31 - static_cast<long>(e.local_rank);
        long remaining = 0;
        for (const GlobalHero &o : without)
            if (o.name == h.name)
                remaining = o.theta;
        EXPECT_EQ(h.theta - removed, remaining) << h.name;
    }
}

TEST(GlobalHeroScore, ConstantFollowsListLength) {
    std::istringstream in("edition\talgorithm\tlocal_rank\tname\tactivity\tculture\nEN\tPageRank\t1\tA\tart\tEN\n");
    EXPECT_EQ(global_hero_score(load_annotations(in, 100), Algorithm::PageRank)[0].theta, 100);
}

TEST(CultureNetwork, QuotedLinkCounts) {
    const CultureNetwork net = build_culture_network(load_fixture("culture_links.tsv"), Algorithm::PageRank);
    EXPECT_EQ(net.weights[idx(Culture::EN)][idx(Culture::FR)], 2);
    EXPECT_EQ(net.weights[idx(Culture::FR)][idx(Culture::EN)], 3);
    EXPECT_EQ(net.weights[idx(Culture::FR)][idx(Culture::DE)], 1);
    EXPECT_EQ(net.weights[idx(Culture::EN)][idx(Culture::WR)], 1);
    for (std::size_t c = 0; c < kCultureCount; ++c)
        EXPECT_EQ(net.weights[c][c], 0);
}

TEST(CultureNetwork, AllLocalListGivesZeroRow) {
    const PersonLists lists({{Culture::KO, Algorithm::PageRank, {entry(1, "Sejong the Great", Culture::KO)}}});
    const CultureNetwork net = build_culture_network(lists, Algorithm::PageRank);
    for (int w : net.weights[idx(Culture::KO)])
        EXPECT_EQ(w, 0);
    EXPECT_EQ(net.local_counts[idx(Culture::KO)], 1);
}

TEST(CultureNetwork, WeightConservation) {
    const PersonLists lists = load_fixture("culture_links.tsv");
    const CultureNetwork net = build_culture_network(lists, Algorithm::PageRank);
    for (const TopPersonList *list : lists.for_algorithm(Algorithm::PageRank)) {
        const auto &row = net.weights[idx(list->edition)];
        EXPECT_EQ(std::accumulate(row.begin(), row.end(), 0) + net.local_counts[idx(list->edition)],
                  static_cast<int>(list->entries.size()));
    }
}

TEST(CultureNetwork, LocalityInvariantUnderConsistentRelabeling) {
    // Swap EN <-> FR and DE <-> KO everywhere.
    const auto relabel = [](Culture c) {
        switch (c) {
        case Culture::EN:
            return Culture::FR;
        case Culture::FR:
            return Culture::EN;
        case Culture::DE:
            return Culture::KO;
        case Culture::KO:
            return Culture::DE;
        default:
            return c;
        }
    };
    const PersonLists original = load_fixture("culture_links.tsv");
    std::vector<TopPersonList> renamed;
    for (const TopPersonList &l : original.lists()) {
        TopPersonList copy = l;
        copy.edition = relabel(l.edition);
        for (ListEntry &e : copy.entries)
            e.person.culture = relabel(e.person.culture);
        renamed.push_back(copy);
    }
    for (std::size_t i = 0; i < renamed.size(); ++i) {
        const TopPersonList &a = original.lists()[i];
        const TopPersonList &b = renamed[i];
        for (std::size_t k = 0; k < a.entries.size(); ++k)
            EXPECT_EQ(a.locality(a.entries[k]), b.locality(b.entries[k]));
    }
}

TEST(CultureRank, WorldColumnIsUniformAndColumnsStochastic) {
    const CultureRanks r = culture_rank(build_culture_network(load_fixture("culture_links.tsv"), Algorithm::PageRank));
    for (std::size_t col = 0; col < kCultureCount; ++col) {
        double s = 0.0;
        for (std::size_t row = 0; row < kCultureCount; ++row)
            s += r.google(row, col);
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
    for (std::size_t row = 0; row < kCultureCount; ++row)
        EXPECT_NEAR(r.google(row, idx(Culture::WR)), 0.1, 1e-15);
    EXPECT_TRUE(r.pagerank.converged);
    EXPECT_TRUE(r.cheirank.converged);
}

TEST(CultureRank, TransitionProbabilitiesFollowCounts) {
    const CultureRanks r = culture_rank(build_culture_network(load_fixture("culture_links.tsv"), Algorithm::PageRank));
    // EN row: FR 2, WR 1 -> S(FR, EN) = 2/3.
    EXPECT_NEAR(r.google(idx(Culture::FR), idx(Culture::EN)), 0.85 * 2.0 / 3.0 + 0.015, 1e-15);
    // FR row: EN 3, DE 1 -> S(EN, FR) = 3/4.
    EXPECT_NEAR(r.google(idx(Culture::EN), idx(Culture::FR)), 0.85 * 0.75 + 0.015, 1e-15);
}

TEST(CultureRank, SymmetricWeightsGiveEqualRanks) {
    // EN <-> FR <-> DE ring in both directions, every culture linked.
    std::vector<TopPersonList> lists;
    const std::array<Culture, 9> &eds = kEditions;
    for (std::size_t i = 0; i < eds.size(); ++i) {
        const Culture next = eds[(i + 1) % eds.size()];
        const Culture prev = eds[(i + eds.size() - 1) % eds.size()];
        lists.push_back({eds[i],
                         Algorithm::PageRank,
                         {entry(1, "N" + std::to_string(i), next), entry(2, "P" + std::to_string(i), prev)}});
    }
    const CultureNetwork net = build_culture_network(PersonLists(lists), Algorithm::PageRank);
    CultureNetwork symmetric = net;
    for (std::size_t a = 0; a < kCultureCount; ++a)
        for (std::size_t b = 0; b < kCultureCount; ++b)
            ASSERT_EQ(symmetric.weights[a][b], symmetric.weights[b][a]);
    // WR has no links either way, so it is dangling in both directions.
    const CultureRanks r = culture_rank(symmetric);
    EXPECT_EQ(r.pagerank.probabilities, r.cheirank.probabilities);
}

TEST(CultureRank, DegenerateNetworkIsAnError) {
    EXPECT_THROW(culture_rank(CultureNetwork{}), ValidationError);
}

TEST(InRankOrder, PermutesRowsAndColumns) {
    DenseMatrix m(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m(i, j) = static_cast<double>(10 * i + j);
    const RankIndex idx = rank_index(std::vector<double>{0.2, 0.5, 0.3}); // order 1, 2, 0
    const DenseMatrix r = in_rank_order(m, idx);
    EXPECT_EQ(r(0, 0), 11.0);
    EXPECT_EQ(r(0, 2), 10.0);
    EXPECT_EQ(r(2, 1), 2.0);
}

TEST(Median, OddEvenAndEmpty) {
    EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_EQ(median({5.0, 3.0}), 4.0);
    EXPECT_THROW(median({}), ContractViolation);
}

TEST(ContributionStats, SingleCitingNode) {
    const DirectedGraph g = DirectedGraph::from_edges(3, {{0, 1}, {0, 2}});
    RankVector p;
    p.probabilities = {0.5, 0.25, 0.25};
    const std::vector<NodeId> targets = {1};
    const ContributionStats s = contribution_stats(g, p, targets);
    ASSERT_TRUE(s.median_contribution.has_value());
    EXPECT_EQ(*s.median_contribution, 0.25);
    EXPECT_EQ(s.link_count, 1u);
}

TEST(ContributionStats, MedianInDegreeOfTwoTargets) {
    // Node 0 has in-degree 3, node 1 has in-degree 5.
    std::vector<Edge> edges;
    for (NodeId s = 2; s < 5; ++s)
        edges.push_back({s, 0});
    for (NodeId s = 2; s < 7; ++s)
        edges.push_back({s, 1});
    const DirectedGraph g = DirectedGraph::from_edges(7, edges);
    RankVector p;
    p.probabilities.assign(7, 1.0 / 7.0);
    const std::vector<NodeId> targets = {0, 1};
    EXPECT_EQ(contribution_stats(g, p, targets).median_in_degree, 4.0);
}

TEST(ContributionStats, RegularGraphGivesExactlyPOverKout) {
    std::vector<Edge> edges;
    const NodeId n = 11;
    for (NodeId i = 0; i < n; ++i) {
        edges.push_back({i, (i + 1) % n});
        edges.push_back({i, (i + 3) % n});
    }
    const DirectedGraph g = DirectedGraph::from_edges(n, edges);
    RankVector p;
    p.probabilities.assign(n, 1.0 / n);
    for (std::vector<NodeId> targets : {std::vector<NodeId>{0}, {1, 2, 3}, {4, 9}}) {
        const ContributionStats s = contribution_stats(g, p, targets);
        EXPECT_EQ(*s.median_contribution, (1.0 / n) / 2.0);
    }
}

TEST(ContributionStats, TargetWithoutInLinksIsFlagged) {
    const DirectedGraph g = DirectedGraph::from_edges(3, {{0, 1}});
    RankVector p;
    p.probabilities = {0.4, 0.4, 0.2};
    const std::vector<NodeId> only_isolated = {2};
    const ContributionStats s = contribution_stats(g, p, only_isolated);
    EXPECT_FALSE(s.median_contribution.has_value());
    EXPECT_EQ(s.targets_without_links, std::vector<NodeId>{2});
    const std::vector<NodeId> none;
    EXPECT_THROW(contribution_stats(g, p, none), ContractViolation);
}
