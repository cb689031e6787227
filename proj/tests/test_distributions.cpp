#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pacestats/distributions.hpp"

using namespace pacestats;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values in this file come from scipy.stats / scipy.special
// (betainc, t, f, norm, studentized_range), printed to 10-12 digits.

TEST_CASE("normal pdf and cdf", "[distributions]") {
    REQUIRE_THAT(normal_pdf(0.0), WithinAbs(0.398942280401, 1e-12));
    REQUIRE_THAT(normal_cdf(0.0), WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(normal_cdf(1.96), WithinAbs(0.975002104852, 1e-12));
    REQUIRE_THAT(normal_cdf(-3.1), WithinAbs(0.000967603213, 1e-12));
    REQUIRE_THAT(normal_cdf(1.5) + normal_cdf(-1.5), WithinAbs(1.0, 1e-14));
}

TEST_CASE("regularized incomplete beta", "[distributions]") {
    REQUIRE_THAT(regularized_incomplete_beta(2.0, 3.0, 0.4), WithinAbs(0.524800000000, 1e-10));
    REQUIRE_THAT(regularized_incomplete_beta(0.5, 0.5, 0.3), WithinAbs(0.369010119566, 1e-10));
    REQUIRE_THAT(regularized_incomplete_beta(5.0, 1.5, 0.8), WithinAbs(0.505560648815, 1e-10));
    REQUIRE(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    REQUIRE(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);

    SECTION("complement identity") {
        for (double x : {0.05, 0.25, 0.5, 0.75, 0.95}) {
            const double lhs = regularized_incomplete_beta(2.5, 4.0, x);
            const double rhs = 1.0 - regularized_incomplete_beta(4.0, 2.5, 1.0 - x);
            REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-12));
        }
    }

    SECTION("domain errors") {
        REQUIRE_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), DomainError);
        REQUIRE_THROWS_AS(regularized_incomplete_beta(1.0, -1.0, 0.5), DomainError);
        REQUIRE_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), DomainError);
        REQUIRE_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, std::nan("")), DomainError);
    }
}

TEST_CASE("student t cdf", "[distributions]") {
    REQUIRE_THAT(student_t_cdf(2.0, 10.0), WithinAbs(0.963305982615, 1e-10));
    REQUIRE_THAT(student_t_cdf(-1.5, 5.0), WithinAbs(0.096951840121, 1e-10));
    REQUIRE_THAT(student_t_cdf(2.4, 50.0), WithinAbs(0.989919742368, 1e-10));
    REQUIRE_THAT(student_t_cdf(0.5, 282.0), WithinAbs(0.691267496931, 1e-10));
    REQUIRE(student_t_cdf(0.0, 7.0) == 0.5);

    SECTION("symmetry") {
        for (double t : {0.3, 1.1, 2.7, 5.0}) {
            REQUIRE_THAT(student_t_cdf(t, 12.0) + student_t_cdf(-t, 12.0), WithinAbs(1.0, 1e-13));
        }
    }

    SECTION("limits and errors") {
        REQUIRE(student_t_cdf(std::numeric_limits<double>::infinity(), 4.0) == 1.0);
        REQUIRE(student_t_cdf(-std::numeric_limits<double>::infinity(), 4.0) == 0.0);
        REQUIRE_THROWS_AS(student_t_cdf(1.0, 0.0), DomainError);
        REQUIRE_THROWS_AS(student_t_cdf(std::nan(""), 4.0), DomainError);
    }
}

TEST_CASE("F survival function", "[distributions]") {
    REQUIRE_THAT(f_survival(8.0, 1.0, 4.0), WithinAbs(0.047420655584, 1e-10));
    REQUIRE_THAT(f_survival(9.444, 2.0, 282.0), WithinAbs(0.000107161293, 1e-10));
    REQUIRE_THAT(f_survival(2.5, 3.0, 17.0), WithinAbs(0.094282805079, 1e-10));
    REQUIRE(f_survival(0.0, 3.0, 9.0) == 1.0);

    SECTION("equal degrees of freedom are symmetric about 1") {
        REQUIRE_THAT(f_survival(1.0, 7.0, 7.0), WithinAbs(0.5, 1e-12));
        for (double x : {1.5, 2.0, 4.0, 10.0}) {
            const double upper = f_survival(x, 9.0, 9.0);
            const double lower = 1.0 - f_survival(1.0 / x, 9.0, 9.0);
            REQUIRE_THAT(upper, WithinAbs(lower, 1e-12));
        }
    }

    SECTION("matches the squared-t route for d1 = 1") {
        for (double t : {0.8, 1.7, 2.9}) {
            const double via_f = f_survival(t * t, 1.0, 11.0);
            const double via_t = 2.0 * (1.0 - student_t_cdf(t, 11.0));
            REQUIRE_THAT(via_f, WithinAbs(via_t, 1e-12));
        }
    }

    SECTION("domain errors") {
        REQUIRE_THROWS_AS(f_survival(-1.0, 2.0, 3.0), DomainError);
        REQUIRE_THROWS_AS(f_survival(1.0, 0.0, 3.0), DomainError);
        REQUIRE_THROWS_AS(f_survival(1.0, 2.0, -3.0), DomainError);
    }
}

TEST_CASE("studentized range cdf", "[distributions]") {
    REQUIRE_THAT(studentized_range_cdf(3.15, 2, 10.0), WithinAbs(0.9499361720, 1e-6));
    REQUIRE_THAT(studentized_range_cdf(3.50, 3, 282.0), WithinAbs(0.9630559863, 1e-6));
    REQUIRE_THAT(studentized_range_cdf(2.0, 3, 30.0), WithinAbs(0.6534785902, 1e-6));
    REQUIRE_THAT(studentized_range_cdf(4.2, 4, 20.0), WithinAbs(0.9649114903, 1e-6));
    REQUIRE_THAT(studentized_range_cdf(1.0, 5, 8.0), WithinAbs(0.0508942774, 1e-6));
    REQUIRE_THAT(studentized_range_cdf(6.0, 2, 5.0), WithinAbs(0.9918510237, 1e-6));
    REQUIRE(studentized_range_cdf(0.0, 3, 10.0) == 0.0);
    REQUIRE(studentized_range_cdf(std::numeric_limits<double>::infinity(), 3, 10.0) == 1.0);

    SECTION("two-group case matches the folded t distribution") {
        const double sqrt2 = std::sqrt(2.0);
        for (double nu : {5.0, 10.0, 30.0, 282.0}) {
            for (double q : {0.5, 1.0, 2.0, 3.0, 4.5, 6.0}) {
                const double via_range = studentized_range_cdf(q, 2, nu);
                const double via_t = 2.0 * student_t_cdf(q / sqrt2, nu) - 1.0;
                REQUIRE_THAT(via_range, WithinAbs(via_t, 1e-5));
            }
        }
    }

    SECTION("very large nu uses the limiting normal range") {
        REQUIRE_THAT(studentized_range_cdf(3.0, 3, 1e7), WithinAbs(0.9144574283, 1e-5));
    }

    SECTION("monotone in q, decreasing in k") {
        double prev = 0.0;
        for (double q : {0.5, 1.0, 1.5, 2.5, 3.5, 5.0}) {
            const double c = studentized_range_cdf(q, 3, 25.0);
            REQUIRE(c >= prev);
            REQUIRE(c >= 0.0);
            REQUIRE(c <= 1.0);
            prev = c;
        }
        REQUIRE(studentized_range_cdf(3.0, 2, 25.0) > studentized_range_cdf(3.0, 4, 25.0));
    }

    SECTION("domain errors") {
        REQUIRE_THROWS_AS(studentized_range_cdf(-0.5, 3, 10.0), DomainError);
        REQUIRE_THROWS_AS(studentized_range_cdf(2.0, 1, 10.0), DomainError);
        REQUIRE_THROWS_AS(studentized_range_cdf(2.0, 3, 0.0), DomainError);
        REQUIRE_THROWS_AS(studentized_range_cdf(std::nan(""), 3, 10.0), DomainError);
    }
}

TEST_CASE("studentized range quantile", "[distributions]") {
    REQUIRE_THAT(studentized_range_quantile(0.95, 3, 282.0), WithinAbs(3.3321085306, 2e-5));
    REQUIRE_THAT(studentized_range_quantile(0.95, 2, 10.0), WithinAbs(3.1510641833, 2e-5));
    REQUIRE_THAT(studentized_range_quantile(0.99, 3, 60.0), WithinAbs(4.2821983587, 2e-5));
    REQUIRE_THAT(studentized_range_quantile(0.90, 5, 40.0), WithinAbs(3.6045812853, 2e-5));

    SECTION("two-group quantile equals the scaled t quantile") {
        // t_{0.975, 10} = 2.228138852 (scipy.stats.t.ppf)
        const double expected = std::sqrt(2.0) * 2.228138852;
        REQUIRE_THAT(studentized_range_quantile(0.95, 2, 10.0), WithinAbs(expected, 1e-5));
    }

    SECTION("round trip through the cdf") {
        for (double p : {0.5, 0.9, 0.95, 0.99}) {
            for (double nu : {5.0, 30.0, 282.0}) {
                const double q = studentized_range_quantile(p, 3, nu);
                REQUIRE_THAT(studentized_range_cdf(q, 3, nu), WithinAbs(p, 1e-5));
            }
        }
    }

    SECTION("increasing in p") {
        const double q90 = studentized_range_quantile(0.90, 4, 18.0);
        const double q95 = studentized_range_quantile(0.95, 4, 18.0);
        const double q99 = studentized_range_quantile(0.99, 4, 18.0);
        REQUIRE(q90 < q95);
        REQUIRE(q95 < q99);
    }

    SECTION("domain errors") {
        REQUIRE_THROWS_AS(studentized_range_quantile(0.0, 3, 10.0), DomainError);
        REQUIRE_THROWS_AS(studentized_range_quantile(1.0, 3, 10.0), DomainError);
        REQUIRE_THROWS_AS(studentized_range_quantile(0.95, 1, 10.0), DomainError);
        REQUIRE_THROWS_AS(studentized_range_quantile(0.95, 3, -1.0), DomainError);
    }
}
