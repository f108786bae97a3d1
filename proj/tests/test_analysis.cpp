#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hanoi/analysis.hpp"
#include "hanoi/errors.hpp"

using namespace hanoi;

namespace {

std::string csv_of(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    write_sweep_csv(out, rows);
    return out.str();
}

}  // namespace

TEST_CASE("exact power laws are recovered")
{
    std::vector<double> x{1, 2, 4, 8, 16}, y, z;
    for (double v : x) {
        y.push_back(2.0 * std::sqrt(v));
        z.push_back(0.62 * std::pow(v, -0.37));
    }
    const ScalingFit f = fit_powerlaw(x, y);
    CHECK(std::abs(f.prefactor - 2.0) <= 1e-12);
    CHECK(std::abs(f.exponent - 0.5) <= 1e-12);
    CHECK(std::abs(f.r_squared - 1.0) <= 1e-12);
    CHECK(f.points_used == 5);
    const ScalingFit g = fit_powerlaw(x, z);
    CHECK(std::abs(g.exponent + 0.37) <= 1e-12);
    CHECK(std::abs(g.prefactor - 0.62) <= 1e-12);
}

TEST_CASE("three-point fit matches the normal equations")
{
    // log x = 0, 1, 2 (base e) and log y = 0, 2, 1: slope 1/2, intercept 1/2,
    // residuals -1/2, 1, -1/2 so r^2 = 1 - 1.5 / 2 = 1/4.
    const std::vector<double> x{1.0, std::exp(1.0), std::exp(2.0)};
    const std::vector<double> y{1.0, std::exp(2.0), std::exp(1.0)};
    const ScalingFit f = fit_powerlaw(x, y);
    CHECK(std::abs(f.exponent - 0.5) <= 1e-12);
    CHECK(std::abs(f.prefactor - std::exp(0.5)) <= 1e-12);
    CHECK(std::abs(f.r_squared - 0.25) <= 1e-12);
}

TEST_CASE("fit is scale-equivariant")
{
    const std::vector<double> x{32, 64, 128, 256, 512};
    const std::vector<double> y{0.2, 0.17, 0.12, 0.11, 0.07};
    const ScalingFit f = fit_powerlaw(x, y);
    for (double lambda : {0.001, 3.0, 1e6}) {
        std::vector<double> scaled;
        for (double v : y) scaled.push_back(lambda * v);
        const ScalingFit g = fit_powerlaw(x, scaled);
        CHECK(std::abs(g.exponent - f.exponent) <= 1e-12);
        CHECK(std::abs(g.prefactor / f.prefactor - lambda) <= 1e-12 * lambda);
    }
}

TEST_CASE("fit preconditions")
{
    const std::vector<double> two{1, 2};
    CHECK_THROWS_AS(fit_powerlaw(two, two), DomainError);
    const std::vector<double> x{1, 2, 3}, bad{1, 0, 2}, neg{1, -2, 2};
    CHECK_THROWS_AS(fit_powerlaw(x, bad), DomainError);
    CHECK_THROWS_AS(fit_powerlaw(neg, x), DomainError);
    const std::vector<double> same{4, 4, 4};
    CHECK_THROWS_AS(fit_powerlaw(same, x), DomainError);
}

TEST_CASE("repetitions implied by P = 0.62 / N^0.37 grow like N^0.185")
{
    std::vector<double> n, reps;
    for (int k = 5; k <= 40; ++k) {
        const double size = std::pow(2.0, k);
        PeakReport r;
        r.t_f = 1;
        r.p_f = 0.62 / std::pow(size, 0.37);
        n.push_back(size);
        reps.push_back(static_cast<double>(evaluate_cost(r).repetitions));
    }
    CHECK(std::abs(fit_powerlaw(n, reps).exponent - 0.185) <= 0.01);
}

TEST_CASE("fit_table filters by status and n")
{
    std::istringstream in(
        "n,N,p_f,status\n"
        "4,16,9,ok\n"
        "5,32,1,ok\n"
        "6,64,2,ok\n"
        "7,128,,no_peak\n"
        "8,256,4,ok\n");
    const CsvTable t = read_csv(in);
    const ScalingFit f = fit_table(t, FitSelection{"N", "p_f", 5});
    CHECK(f.points_used == 3);
    const std::vector<double> x{32, 64, 256}, y{1, 2, 4};
    CHECK(f.exponent == fit_powerlaw(x, y).exponent);
    const ScalingFit all = fit_table(t, FitSelection{"N", "p_f", 0});
    CHECK(all.points_used == 4);
    CHECK_THROWS_AS(fit_table(t, FitSelection{"N", "cost", 5}), ParseError);

    std::istringstream short_table("N,y\n32,1\n64,2\n");
    CHECK_THROWS_AS(fit_table(read_csv(short_table), FitSelection{"N", "y", 5}), DomainError);

    std::istringstream broken("n,N,y\n5,32,1\n6,64,x\n7,128,3\n");
    try {
        fit_table(read_csv(broken), FitSelection{"N", "y", 5});
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("fit CSV")
{
    std::ostringstream out;
    write_fit_csv(out, ScalingFit{2.0, 0.5, 1.0, 5});
    CHECK(out.str() == "prefactor,exponent,r_squared,points_used\n2,0.5,1,5\n");
}

TEST_CASE("default grids")
{
    CHECK(default_size_grid() == std::vector<int>{5, 6, 7, 8, 9, 10, 11, 12});
    const auto e = default_epsilon_grid();
    REQUIRE(e.size() == 8);
    CHECK(e.front() == 0.25);
    CHECK(e.back() == 2.0);
}

TEST_CASE("sweep spec validation")
{
    SweepSpec s;
    s.variable = SweepVariable::epsilon;
    s.base.method = Method::abstract;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.base.method = Method::modified;
    s.epsilon_grid = {0.5, 2.5};
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.epsilon_grid = {};
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.variable = SweepVariable::delta;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.base.method = Method::tulsi;
    s.base.tulsi.rule = CosDeltaRule::explicit_angle;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.variable = SweepVariable::size;
    s.n_values = {1, 5};
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("epsilon sweep flags no-peak rows and sorts by value")
{
    SweepSpec s;
    s.variable = SweepVariable::epsilon;
    s.base.method = Method::modified;
    s.base.n = 6;
    s.epsilon_grid = {2.0, 0.75, 1.0};
    s.jobs = 2;
    const auto rows = sweep(s);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].value == 0.75);
    CHECK(rows[2].value == 2.0);
    CHECK(rows[0].report.has_value());
    CHECK_FALSE(rows[2].report.has_value());
    const std::string text = csv_of(rows);
    CHECK(text.rfind(sweep_header() + "\n", 0) == 0);
    CHECK(text.find("epsilon,2,modified,paired,6,64,3,2,,,,,,no_peak\n") != std::string::npos);
}

TEST_CASE("sweep output is identical across worker counts")
{
    SweepSpec s;
    s.variable = SweepVariable::size;
    s.base.method = Method::tulsi;
    s.n_values = {8, 5, 7, 6};
    std::string first;
    for (unsigned jobs : {1u, 2u, 3u, 8u}) {
        s.jobs = jobs;
        const std::string text = csv_of(sweep(s));
        if (first.empty()) first = text;
        CHECK(text == first);
    }
    CHECK(first.find("size,5,tulsi,paired,5,32,3,1,0.2,") != std::string::npos);
}

TEST_CASE("delta sweep varies c")
{
    SweepSpec s;
    s.variable = SweepVariable::delta;
    s.base.method = Method::tulsi;
    s.base.n = 6;
    s.c_grid = {1.5, 0.5};
    const auto rows = sweep(s);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].config.tulsi.c == 0.5);
    CHECK(rows[1].config.cos_delta() == doctest::Approx(0.25));
}

TEST_CASE("sweep rethrows errors other than no-peak")
{
    SweepSpec s;
    s.variable = SweepVariable::size;
    s.base.budget = 1000;
    s.n_values = {5, 6};
    CHECK_THROWS_AS(sweep(s), ResourceError);
}
