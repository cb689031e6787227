#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "pacestats/posthoc.hpp"

using namespace pacestats;
using Catch::Matchers::WithinAbs;

// Reference values from scipy: tukey_hsd cross-checked against a direct
// studentized_range transcription, and the same transcription with
// Welch-Satterthwaite degrees of freedom for the heteroscedastic table.

namespace {

std::vector<GroupSummary> three_groups() {
    return {summarize(std::vector<double>{12.1, 14.3, 11.8, 15.2, 13.4, 12.9}, "a"),
            summarize(std::vector<double>{16.0, 14.8, 17.3, 15.1, 16.6}, "b"),
            summarize(std::vector<double>{13.3, 13.9, 12.5, 14.0, 15.8, 14.4, 13.1}, "c")};
}

const PairwiseComparison& row_for(const std::vector<PairwiseComparison>& rows,
                                  const std::string& i, const std::string& j) {
    for (const PairwiseComparison& r : rows) {
        if (r.group_i == i && r.group_j == j) return r;
    }
    throw std::runtime_error("row not found");
}

} // namespace

TEST_CASE("tukey-kramer comparisons", "[posthoc]") {
    const auto groups = three_groups();
    const double msw = 1.305165079365;
    const auto rows = tukey_kramer(groups, msw, 15.0, 0.05);

    REQUIRE(rows.size() == 6);

    SECTION("row order covers the full matrix grouped by first label") {
        REQUIRE(rows[0].group_i == "a");
        REQUIRE(rows[0].group_j == "b");
        REQUIRE(rows[1].group_i == "a");
        REQUIRE(rows[1].group_j == "c");
        REQUIRE(rows[2].group_i == "b");
        REQUIRE(rows[2].group_j == "a");
        REQUIRE(rows[3].group_i == "b");
        REQUIRE(rows[3].group_j == "c");
        REQUIRE(rows[4].group_i == "c");
        REQUIRE(rows[4].group_j == "a");
        REQUIRE(rows[5].group_i == "c");
        REQUIRE(rows[5].group_j == "b");
    }

    SECTION("values match the reference table") {
        const auto& ab = row_for(rows, "a", "b");
        REQUIRE_THAT(ab.mean_difference, WithinAbs(-2.6766666667, 1e-9));
        REQUIRE_THAT(ab.std_error, WithinAbs(0.6917806944, 1e-9));
        REQUIRE_THAT(ab.p, WithinAbs(0.0040612617, 1e-6));
        REQUIRE_THAT(ab.ci_lower, WithinAbs(-4.4735464415, 1e-4));
        REQUIRE_THAT(ab.ci_upper, WithinAbs(-0.8797868918, 1e-4));
        REQUIRE(ab.significant);
        REQUIRE(ab.df == 15.0);

        const auto& ac = row_for(rows, "a", "c");
        REQUIRE_THAT(ac.p, WithinAbs(0.6468543986, 1e-6));
        REQUIRE_FALSE(ac.significant);

        const auto& bc = row_for(rows, "b", "c");
        REQUIRE_THAT(bc.mean_difference, WithinAbs(2.1028571429, 1e-9));
        REQUIRE_THAT(bc.p, WithinAbs(0.0173220611, 1e-6));
        REQUIRE(bc.significant);
    }

    SECTION("mirrored rows negate differences and reflect intervals") {
        const auto& ab = row_for(rows, "a", "b");
        const auto& ba = row_for(rows, "b", "a");
        REQUIRE(ba.mean_difference == -ab.mean_difference);
        REQUIRE(ba.std_error == ab.std_error);
        REQUIRE(ba.p == ab.p);
        REQUIRE(ba.significant == ab.significant);
        REQUIRE(ba.ci_lower == -ab.ci_upper);
        REQUIRE(ba.ci_upper == -ab.ci_lower);
    }

    SECTION("argument validation") {
        REQUIRE_THROWS_AS(tukey_kramer(groups, 0.0, 15.0), DomainError);
        REQUIRE_THROWS_AS(tukey_kramer(groups, msw, -1.0), DomainError);
        REQUIRE_THROWS_AS(tukey_kramer(groups, msw, 15.0, 1.0), DomainError);
        const std::vector<GroupSummary> one{groups[0]};
        REQUIRE_THROWS_AS(tukey_kramer(one, msw, 15.0), InsufficientDataError);
    }
}

TEST_CASE("games-howell comparisons", "[posthoc]") {
    const auto groups = three_groups();
    const auto rows = games_howell(groups, 0.05);

    REQUIRE(rows.size() == 6);

    SECTION("values match the reference table") {
        const auto& ab = row_for(rows, "a", "b");
        REQUIRE_THAT(ab.mean_difference, WithinAbs(-2.6766666667, 1e-9));
        REQUIRE_THAT(ab.std_error, WithinAbs(0.7048955793, 1e-9));
        REQUIRE_THAT(ab.df, WithinAbs(8.9942649888, 1e-8));
        REQUIRE_THAT(ab.p, WithinAbs(0.0106441148, 1e-6));
        REQUIRE_THAT(ab.ci_lower, WithinAbs(-4.6449702622, 1e-4));
        REQUIRE_THAT(ab.ci_upper, WithinAbs(-0.7083630711, 1e-4));
        REQUIRE(ab.significant);

        const auto& ac = row_for(rows, "a", "c");
        REQUIRE_THAT(ac.df, WithinAbs(9.7240261768, 1e-8));
        REQUIRE_THAT(ac.p, WithinAbs(0.6760983239, 1e-6));
        REQUIRE_FALSE(ac.significant);

        const auto& bc = row_for(rows, "b", "c");
        REQUIRE_THAT(bc.std_error, WithinAbs(0.6139323458, 1e-9));
        REQUIRE_THAT(bc.p, WithinAbs(0.0188970306, 1e-6));
        REQUIRE(bc.significant);
    }

    SECTION("mirrored rows are consistent") {
        const auto& bc = row_for(rows, "b", "c");
        const auto& cb = row_for(rows, "c", "b");
        REQUIRE(cb.mean_difference == -bc.mean_difference);
        REQUIRE(cb.df == bc.df);
        REQUIRE(cb.p == bc.p);
        REQUIRE(cb.ci_lower == -bc.ci_upper);
    }

    SECTION("zero variance is degenerate") {
        std::vector<GroupSummary> bad = groups;
        bad[1].variance = 0.0;
        REQUIRE_THROWS_AS(games_howell(bad), DegenerateDataError);
    }

    SECTION("equal means yield p = 1 and symmetric intervals") {
        const std::vector<GroupSummary> tied{{"x", 8, 5.0, 2.0}, {"y", 9, 5.0, 3.0}};
        const auto r = games_howell(tied);
        REQUIRE(r[0].mean_difference == 0.0);
        REQUIRE_THAT(r[0].p, WithinAbs(1.0, 1e-12));
        REQUIRE_FALSE(r[0].significant);
        REQUIRE_THAT(r[0].ci_lower + r[0].ci_upper, WithinAbs(0.0, 1e-12));
    }
}
