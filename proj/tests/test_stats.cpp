#include "bpso/stats.hpp"

#include <vector>

#include "bpso/types.hpp"
#include "doctest.h"
#include "oracle_tables.hpp"

using namespace bpso;

TEST_CASE("mean and sample standard deviation")
{
    const std::vector<double> v{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
    CHECK(mean(v) == 5.0);
    CHECK(sample_stddev(v) == doctest::Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-15));
    CHECK(sample_stddev(std::vector<double>{3.0}) == 0.0);
}

TEST_CASE("incomplete beta sanity")
{
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK(incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-14));
    CHECK(incomplete_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    // I_x(a, b) = 1 - I_{1-x}(b, a)
    CHECK(incomplete_beta(2.5, 0.5, 0.3) == doctest::Approx(1.0 - incomplete_beta(0.5, 2.5, 0.7)).epsilon(1e-13));
    // Student t with one degree of freedom is Cauchy.
    CHECK(student_t_two_tailed(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("welch test against reference table")
{
    for (const auto& c : oracle::kWelchCases) {
        const TTestResult r = welch_t_test(c.a, c.b);
        CHECK(r.t == doctest::Approx(c.t).epsilon(1e-10));
        CHECK(r.df == doctest::Approx(c.df).epsilon(1e-10));
        CHECK(std::abs(r.p - c.p) < 1e-6 * std::max(1.0, c.p));
        CHECK(r.p == doctest::Approx(c.p).epsilon(1e-8));
        CHECK_FALSE(r.degenerate);
    }
}

TEST_CASE("welch reference example")
{
    const std::vector<double> a{0.0, 1.0}, b{10.0, 11.0};
    const TTestResult r = welch_t_test(a, b);
    CHECK(r.t == doctest::Approx(-14.14213562373095).epsilon(1e-12));
    CHECK(r.df == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(0.004962809790010865).epsilon(1e-9));
}

TEST_CASE("welch properties")
{
    const std::vector<double> a{1.0, 2.5, 3.0, 0.2}, b{0.1, 0.4, -1.0, 2.0, 0.3};
    const TTestResult same = welch_t_test(a, a);
    CHECK(same.t == 0.0);
    CHECK(same.p == 1.0);

    const TTestResult ab = welch_t_test(a, b), ba = welch_t_test(b, a);
    CHECK(ab.t == -ba.t);
    CHECK(ab.df == ba.df);
    CHECK(ab.p == ba.p);
    CHECK(ab.p > 0.0);
    CHECK(ab.p <= 1.0);

    const std::vector<double> c1{2.0, 2.0, 2.0}, c2{2.0, 2.0}, c3{3.0, 3.0};
    const TTestResult eq = welch_t_test(c1, c2);
    CHECK(eq.degenerate);
    CHECK(eq.p == 1.0);
    const TTestResult ne = welch_t_test(c1, c3);
    CHECK(ne.degenerate);
    CHECK(ne.p == 0.0);

    CHECK_THROWS_AS(welch_t_test(std::vector<double>{1.0}, b), UsageError);
}
