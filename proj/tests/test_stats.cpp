#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qde/errors.hpp"
#include "qde/stats.hpp"

using namespace qde;

TEST_CASE("cell aggregation") {
    SUBCASE("even count: median is the central-pair mean, sigma divides by N") {
        const CellStats cs = aggregate_cell({0.0, 0.0, 1.0, 3.0});
        CHECK(cs.median == 0.5);
        CHECK(cs.mean == 1.0);
        // Frozen: population sigma of {0,0,1,3} = sqrt(6)/2.
        CHECK(cs.sigma == doctest::Approx(1.224744871391589).epsilon(1e-15));
        CHECK(cs.count == 4);
    }
    SUBCASE("odd count and unsorted input") {
        const CellStats cs = aggregate_cell({3.0, 1.0, 2.0});
        CHECK(cs.median == 2.0);
        CHECK(cs.mean == 2.0);
        CHECK(cs.sigma ==
              doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    }
    SUBCASE("single value") {
        const CellStats cs = aggregate_cell({5.0});
        CHECK(cs.median == 5.0);
        CHECK(cs.mean == 5.0);
        CHECK(cs.sigma == 0.0);
        CHECK(cs.count == 1);
    }
    SUBCASE("empty cell throws") {
        CHECK_THROWS_AS(aggregate_cell({}), EmptyCell);
    }
}

TEST_CASE("convergence generation") {
    // First index after which the trace never moves again.
    CHECK(convergence_generation({5.0, 3.0, 3.0, 3.0}) == 1);
    CHECK(convergence_generation({5.0, 4.0, 3.0, 2.0, 1.0}) == 4);
    CHECK(convergence_generation({3.0}) == 0);
    CHECK(convergence_generation({2.0, 2.0, 2.0}) == 0);
    // Tolerance widens the "settled" band.
    CHECK(convergence_generation({5.0, 3.0, 3.05, 3.0}, 0.1) == 1);
    CHECK(convergence_generation({5.0, 3.0, 3.05, 3.0}, 0.0) == 3);
    // Non-monotone traces settle at the last change.
    CHECK(convergence_generation({1.0, 2.0, 1.0, 1.0}) == 2);
    CHECK_THROWS_AS(convergence_generation({}), EmptyCell);
}

TEST_CASE("rank test, tie-free frozen example") {
    // Six blocks, three treatments, identical ordering in every block:
    // mean ranks (3, 2, 1), statistic 12, p frozen from the chi-squared
    // upper tail with 2 degrees of freedom.
    std::vector<std::vector<double>> m;
    for (int i = 0; i < 6; ++i)
        m.push_back({30.0 + i, 20.0 + i, 10.0 + i});
    const FriedmanResult fr = friedman(m);
    CHECK(fr.k == 3);
    CHECK(fr.n == 6);
    REQUIRE(fr.mean_ranks.size() == 3);
    CHECK(fr.mean_ranks[0] == doctest::Approx(3.0));
    CHECK(fr.mean_ranks[1] == doctest::Approx(2.0));
    CHECK(fr.mean_ranks[2] == doctest::Approx(1.0));
    CHECK(fr.statistic == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(fr.p_value ==
          doctest::Approx(0.002478752176666357).epsilon(1e-12));
}

TEST_CASE("rank test, average-rank ties") {
    const std::vector<std::vector<double>> m{{1.0, 1.0, 2.0},
                                             {1.0, 2.0, 3.0}};
    const FriedmanResult fr = friedman(m);
    // Block 1 ranks: (1.5, 1.5, 3); block 2: (1, 2, 3).
    CHECK(fr.mean_ranks[0] == doctest::Approx(1.25));
    CHECK(fr.mean_ranks[1] == doctest::Approx(1.75));
    CHECK(fr.mean_ranks[2] == doctest::Approx(3.0));
    CHECK(fr.statistic == doctest::Approx(3.25).epsilon(1e-12));
    CHECK(fr.p_value ==
          doctest::Approx(0.19691167520419406).epsilon(1e-12));
}

TEST_CASE("rank test, two treatments hit the df=1 tail") {
    // 120 blocks, treatment 0 better in 63 and worse in 57: mean ranks
    // (1.475, 1.525), statistic 4n(1/2 - w/n)^2 = 0.3.
    std::vector<std::vector<double>> m;
    for (int i = 0; i < 63; ++i) m.push_back({1.0, 2.0});
    for (int i = 0; i < 57; ++i) m.push_back({2.0, 1.0});
    const FriedmanResult fr = friedman(m);
    CHECK(fr.statistic == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(fr.p_value == doctest::Approx(0.583882420770365).epsilon(1e-12));
}

TEST_CASE("rank direction flag") {
    const std::vector<std::vector<double>> m{{1.0, 2.0}, {3.0, 4.0}};
    const FriedmanResult lo = friedman(m, true);
    CHECK(lo.mean_ranks[0] == doctest::Approx(1.0));
    CHECK(lo.mean_ranks[1] == doctest::Approx(2.0));
    const FriedmanResult hi = friedman(m, false);
    CHECK(hi.mean_ranks[0] == doctest::Approx(2.0));
    CHECK(hi.mean_ranks[1] == doctest::Approx(1.0));
}

TEST_CASE("rank test input validation") {
    CHECK_THROWS_AS(friedman({{1.0, 2.0}}), DegenerateInput);       // n < 2
    CHECK_THROWS_AS(friedman({{1.0}, {2.0}}), DegenerateInput);     // k < 2
    CHECK_THROWS_AS(friedman({{1.0, 2.0}, {1.0}}), DegenerateInput);
    CHECK_THROWS_AS(friedman({}), DegenerateInput);
}

TEST_CASE("all-tied blocks give zero statistic") {
    const std::vector<std::vector<double>> m{{1.0, 1.0, 1.0},
                                             {2.0, 2.0, 2.0}};
    const FriedmanResult fr = friedman(m);
    for (double r : fr.mean_ranks) CHECK(r == doctest::Approx(2.0));
    CHECK(fr.statistic == doctest::Approx(0.0));
    CHECK(fr.p_value == doctest::Approx(1.0));
}

namespace {

FriedmanResult make_fr(int k, int n, std::vector<double> ranks) {
    FriedmanResult fr;
    fr.k = k;
    fr.n = n;
    fr.mean_ranks = std::move(ranks);
    return fr;
}

}  // namespace

TEST_CASE("pairwise critical difference") {
    SUBCASE("frozen CD at k=4, n=14") {
        const FriedmanResult fr = make_fr(4, 14, {1.0, 2.0, 3.0, 4.0});
        const NemenyiResult nr = nemenyi(fr, 0.05);
        CHECK(nr.critical_difference ==
              doctest::Approx(1.2535591470949248).epsilon(1e-12));
        // Gap 1 < CD: adjacent pairs indistinguishable; gap 2 and 3 exceed it.
        CHECK_FALSE(nr.pairwise_significant[0][1]);
        CHECK(nr.pairwise_significant[0][2]);
        CHECK(nr.pairwise_significant[0][3]);
        CHECK_FALSE(nr.pairwise_significant[1][2]);
        for (int a = 0; a < 4; ++a) {
            CHECK_FALSE(nr.pairwise_significant[a][a]);
            for (int b = 0; b < 4; ++b)
                CHECK(nr.pairwise_significant[a][b] ==
                      nr.pairwise_significant[b][a]);
        }
    }
    SUBCASE("frozen CD at the weaker level") {
        const NemenyiResult nr =
            nemenyi(make_fr(4, 14, {1.0, 2.0, 3.0, 4.0}), 0.10);
        CHECK(nr.critical_difference ==
              doctest::Approx(1.1180601669873556).epsilon(1e-12));
    }
    SUBCASE("frozen CD at the k=2 table edge") {
        const NemenyiResult nr = nemenyi(make_fr(2, 4, {1.0, 2.0}), 0.05);
        CHECK(nr.critical_difference ==
              doctest::Approx(0.97998199225).epsilon(1e-12));
    }
    SUBCASE("unsupported levels and k outside the table throw") {
        const FriedmanResult fr = make_fr(4, 14, {1.0, 2.0, 3.0, 4.0});
        CHECK_THROWS_AS(nemenyi(fr, 0.01), UnsupportedAlpha);
        CHECK_THROWS_AS(nemenyi(make_fr(21, 5, std::vector<double>(21, 1.0)),
                                0.05),
                        KOutOfTable);
        CHECK_THROWS_AS(nemenyi(make_fr(1, 5, {1.0}), 0.05), KOutOfTable);
    }
}

TEST_CASE("critical-difference diagram data") {
    SUBCASE("hand-built cliques") {
        const FriedmanResult fr = make_fr(5, 10, {3.0, 1.0, 1.5, 2.8, 4.5});
        NemenyiResult nr;
        nr.critical_difference = 0.6;
        const CdDiagramData cd = cd_diagram_data(fr, nr);
        CHECK(cd.order == std::vector<int>{1, 2, 3, 0, 4});
        CHECK(cd.sorted_ranks == std::vector<double>{1.0, 1.5, 2.8, 3.0, 4.5});
        REQUIRE(cd.cliques.size() == 3);
        CHECK(cd.cliques[0] == std::pair<int, int>{0, 1});
        CHECK(cd.cliques[1] == std::pair<int, int>{2, 3});
        CHECK(cd.cliques[2] == std::pair<int, int>{4, 4});
        CHECK(cd.critical_difference == 0.6);
    }
    SUBCASE("overlapping maximal cliques survive") {
        // Ranks 1, 2, 3 with CD between 1 and 2: {0,1} and {1,2} are both
        // maximal and neither contains the other.
        std::vector<std::vector<double>> m;
        for (int i = 0; i < 6; ++i) m.push_back({30.0 + i, 20.0 + i, 10.0 + i});
        const FriedmanResult fr = friedman(m);
        const NemenyiResult nr = nemenyi(fr, 0.05);
        CHECK(nr.critical_difference ==
              doctest::Approx(1.3531361644579236).epsilon(1e-12));
        const CdDiagramData cd = cd_diagram_data(fr, nr);
        CHECK(cd.order == std::vector<int>{2, 1, 0});
        REQUIRE(cd.cliques.size() == 2);
        CHECK(cd.cliques[0] == std::pair<int, int>{0, 1});
        CHECK(cd.cliques[1] == std::pair<int, int>{1, 2});
    }
    SUBCASE("one clique when nothing is significant") {
        const FriedmanResult fr = make_fr(3, 4, {1.9, 2.0, 2.1});
        const NemenyiResult nr = nemenyi(fr, 0.05);
        const CdDiagramData cd = cd_diagram_data(fr, nr);
        REQUIRE(cd.cliques.size() == 1);
        CHECK(cd.cliques[0] == std::pair<int, int>{0, 2});
    }
    SUBCASE("all-singleton cliques when everything is significant") {
        const FriedmanResult fr = make_fr(3, 1000, {1.0, 2.0, 3.0});
        NemenyiResult nr;
        nr.critical_difference = 0.5;
        const CdDiagramData cd = cd_diagram_data(fr, nr);
        REQUIRE(cd.cliques.size() == 3);
        for (int i = 0; i < 3; ++i)
            CHECK(cd.cliques[i] == std::pair<int, int>{i, i});
    }
}
