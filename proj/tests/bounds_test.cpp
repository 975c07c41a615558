#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rlnc/bounds.hpp"

using namespace rlnc;

namespace {

const std::vector<double> kEps = {0.0, 0.1, 0.25, 0.5, 0.9, 1.0};

NetworkParams net(int n, int m, std::uint32_t q, double eps_sr, double eps_rd)
{
    return {n, m, q, eps_sr, eps_rd};
}

// Grid over N in 1..15, M in N..N+10, q in {2,4,64}, both erasure rates in kEps.
template <typename F>
void for_each_grid_point(F&& f)
{
    for (int n = 1; n <= 15; ++n)
        for (int m = n; m <= n + 10; ++m)
            for (const std::uint32_t q : {2u, 4u, 64u})
                for (const double es : kEps)
                    for (const double er : kEps) f(net(n, m, q, es, er));
}

} // namespace

TEST_CASE("gamma")
{
    for (const std::uint32_t q : {2u, 3u, 4u, 64u}) {
        CHECK(gamma(net(5, 5, q, 0.3, 0), 1) == doctest::Approx(0.3).epsilon(1e-15));
        for (int w = 1; w <= 5; ++w) CHECK(gamma(net(5, 5, q, 1.0, 0), w) == 1.0);
    }
    for (int w = 1; w <= 8; ++w) CHECK(gamma(net(8, 8, 2, 0.5, 0), w) == 0.5);
    // No erasures over F_2: odd-weight sums of ones never vanish.
    CHECK(gamma(net(4, 4, 2, 0.0, 0), 3) == 0.0);
    CHECK(gamma(net(4, 4, 2, 0.0, 0), 4) == 1.0);
}

TEST_CASE("dependence_prob")
{
    const auto p = net(6, 10, 2, 0.5, 0);
    CHECK(dependence_prob(p, 3, 0) == 1.0);
    CHECK(dependence_prob(p, 3, 10) == doctest::Approx(9.765625e-4).epsilon(1e-14));
    const auto r = net(4, 7, 8, 0.35, 0);
    CHECK(dependence_prob(r, 4, 7) == doctest::Approx(std::pow(gamma(r, 4), 7)).epsilon(1e-14));
}

TEST_CASE("mu0")
{
    // Single source collapses to eps_sr^rows.
    for (const int rows : {0, 1, 4, 9}) {
        CHECK(mu0(net(1, 9, 4, 0.3, 0), rows) == doctest::Approx(std::pow(0.3, rows)).epsilon(1e-14));
    }
    // Exact rational evaluation: (2 * 0.2^3 + 0.68^3) = 0.330432.
    CHECK(mu0(net(2, 3, 2, 0.2, 0), 3) == doctest::Approx(0.330432).epsilon(1e-13));
    const auto exact = testing::mu0_exact(2, 3, 2, testing::decimal("0.2"));
    CHECK(mu0(net(2, 3, 2, 0.2, 0), 3) ==
          doctest::Approx(exact.convert_to<double>()).epsilon(1e-13));

    // Fewer rows than sources leaves at least (q^(N-rows) - 1)/(q - 1) null directions.
    for (const std::uint32_t q : {2u, 3u, 4u, 64u})
        for (const double es : kEps)
            for (int rows = 0; rows < 6; ++rows) {
                const double floor = (std::pow(double(q), 6 - rows) - 1) / (q - 1);
                CHECK(mu0(net(6, 6, q, es, 0), rows) >= floor * (1 - 1e-12));
                CHECK(mu0(net(6, 6, q, es, 0), rows) >= 1.0);
            }
}

TEST_CASE("mu0 against exact rationals across weights and fields")
{
    for (const std::uint32_t q : {2u, 3u, 4u, 64u})
        for (const char* es : {"0", "0.1", "0.25", "0.5", "0.9"})
            for (const int n : {1, 3, 7, 12})
                for (const int rows : {0, n - 1, n, n + 4}) {
                    if (rows < 0) continue;
                    const double expected =
                        testing::mu0_exact(n, rows, q, testing::decimal(es)).convert_to<double>();
                    CAPTURE(q);
                    CAPTURE(n);
                    CAPTURE(rows);
                    CHECK(mu0(net(n, rows, q, std::stod(es), 0), rows) ==
                          doctest::Approx(expected).epsilon(1e-11));
                }
}

TEST_CASE("ub_old")
{
    CHECK(ub_old(net(7, 9, 4, 0.35, 0)) == doctest::Approx(mu0(net(7, 9, 4, 0.35, 0), 9)).epsilon(1e-13));
    CHECK(ub_old(net(4, 6, 2, 1.0, 0.1)) >= 1.0);
    CHECK(ub_old(net(4, 6, 2, 0.3, 1.0)) >= 1.0);
    CHECK(ub_old_clamped(net(4, 6, 2, 0.3, 1.0)) == 1.0);

    // Values from 30-digit evaluation of the weight sum. At eps_sr = 0.5 the raw
    // bound is (2^30 - 1) 0.55^35, below one; it crosses one between 0.8 and 0.9.
    CHECK(ub_old(net(30, 35, 2, 0.5, 0.1)) == doctest::Approx(0.87820115068411918788).epsilon(1e-11));
    CHECK(ub_old(net(30, 35, 2, 0.8, 0.1)) == doctest::Approx(0.94681570147990900934).epsilon(1e-11));
    CHECK(ub_old(net(30, 35, 2, 0.9, 0.1)) == doctest::Approx(8.7956559451948434002).epsilon(1e-11));
    CHECK(ub_old(net(30, 35, 2, 0.9, 0.1)) > 1.0);
    CHECK(ub_old(net(20, 25, 64, 0.3, 0.1)) > 1.0);

    for (const char* es : {"0.1", "0.5", "0.9"})
        for (const char* er : {"0", "0.25", "0.9"}) {
            const double expected =
                testing::ub_old_exact(9, 13, 4, testing::decimal(es), testing::decimal(er))
                    .convert_to<double>();
            CHECK(ub_old(net(9, 13, 4, std::stod(es), std::stod(er))) ==
                  doctest::Approx(expected).epsilon(1e-11));
        }
}

TEST_CASE("ub_old_binomial_form")
{
    CHECK(ub_old_binomial_form(net(5, 8, 4, 0.2, 0)) ==
          doctest::Approx(mu0(net(5, 8, 4, 0.2, 0), 8)).epsilon(1e-14));
    for (const std::uint32_t q : {2u, 3u, 4u, 64u}) {
        const double expected = (std::pow(double(q), 6) - 1) / (q - 1);
        CHECK(ub_old_binomial_form(net(6, 9, q, 0.4, 1.0)) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("lb_old")
{
    CHECK(lb_old(net(1, 6, 2, 0.3, 0.2)) == doctest::Approx(std::pow(0.44, 6)).epsilon(1e-14));
    CHECK(lb_old(net(5, 6, 4, 0.0, 0.0)) == 0.0);
    CHECK(lb_old(net(10, 12, 2, 0.7, 0.2)) == doctest::Approx(0.31504531343155804705).epsilon(1e-13));
    for_each_grid_point([](const NetworkParams& p) {
        REQUIRE(std::abs(lb_old(p) - lb_old_binomial_sum(p)) <= 1e-12);
    });
}

TEST_CASE("eta")
{
    for (int rows = 0; rows < 12; ++rows) {
        CHECK(eta(net(3, 12, 2, 0.0, 0), rows, Extremum::max) == 1.0);
    }
    for (const auto which : {Extremum::max, Extremum::min}) {
        CHECK(eta(net(5, 5, 4, 0.3, 0), 4, which) == 1.0);
        CHECK(eta(net(5, 5, 4, 0.3, 0), 0, which) == 1.0);
    }
    // N = 1: beta^rows. beta_max = max(0.3, 0.7/3), beta_min = 0.7/3.
    CHECK(eta(net(1, 5, 4, 0.3, 0), 5, Extremum::max) == doctest::Approx(std::pow(0.3, 5)).epsilon(1e-13));
    CHECK(eta(net(1, 5, 4, 0.3, 0), 5, Extremum::min) ==
          doctest::Approx(std::pow(0.7 / 3, 5)).epsilon(1e-13));
    // Product form for N = 3, rows = 4: 1 - (1 - b^4)(1 - b^3)(1 - b^2).
    const double b = 0.6;
    CHECK(eta(net(3, 4, 2, 0.6, 0), 4, Extremum::max) ==
          doctest::Approx(1 - (1 - std::pow(b, 4)) * (1 - std::pow(b, 3)) * (1 - b * b)).epsilon(1e-13));
}

TEST_CASE("p0")
{
    CHECK(p0(net(4, 4, 2, 0.3, 0), 0) == 1.0);
    CHECK(p0(net(1, 4, 2, 0.3, 0), 4) == doctest::Approx(std::pow(0.3, 4)).epsilon(1e-14));
    CHECK(p0(net(6, 4, 2, 0.0, 0), 3) == 0.0);
    CHECK(p0(net(6, 4, 2, 0.2, 0), 3) == doctest::Approx(1 - std::pow(1 - 0.008, 6)).epsilon(1e-13));
}

TEST_CASE("ub_new and lb_new worked examples")
{
    for (const double es : kEps)
        for (const double er : kEps)
            for (const int m : {1, 4, 9}) {
                const double exact = std::pow(es + er - es * er, m);
                const auto p = net(1, m, 4, es, er);
                CHECK(std::abs(ub_new(p) - exact) <= 1e-12);
                CHECK(std::abs(lb_new(p) - exact) <= 1e-12);
            }
    CHECK(ub_new(net(6, 8, 3, 1.0, 0.2)) == 1.0);
    CHECK(lb_new(net(6, 8, 4, 0.0, 0.0)) == 0.0);

    // Sandwich around the exact value 780893/1953125 (brute-force enumeration).
    const auto p = net(2, 3, 2, 0.2, 0.1);
    const double exact = 780893.0 / 1953125.0;
    CHECK(lb_new(p) <= exact);
    CHECK(ub_new(p) >= exact);
}

TEST_CASE("evaluate_all shares the single-call values")
{
    const auto p = net(12, 16, 4, 0.4, 0.15);
    const auto b = evaluate_all(p);
    CHECK(b.ub_new == doctest::Approx(ub_new(p)).epsilon(1e-15));
    CHECK(b.lb_new == doctest::Approx(lb_new(p)).epsilon(1e-15));
    CHECK(b.mu0 == mu0(p, 16));
    CHECK(b.ub_old_raw == ub_old(p));
    CHECK(b.ub_old_clamped == std::min(1.0, ub_old(p)));
    CHECK(b.lb_old == lb_old(p));
    REQUIRE(b.eta_max.size() == 17);
    CHECK(b.delivery_weight.sum() == doctest::Approx(1.0).epsilon(1e-13));
    for (int r = 0; r <= 16; ++r) {
        CHECK(b.eta_max(r) == eta(p, r, Extremum::max));
        CHECK(b.p0_rows(r) == p0(p, r));
    }

    const auto n1 = evaluate_all(net(1, 7, 2, 0.3, 0.2));
    CHECK(std::abs(n1.ub_new - std::pow(0.44, 7)) <= 1e-12);
    CHECK(std::abs(n1.lb_new - std::pow(0.44, 7)) <= 1e-12);
    const auto clean = evaluate_all(net(5, 10, 65536, 0.0, 0.0));
    CHECK(clean.ub_new < 1e-20);
    CHECK(clean.lb_new == 0.0);
}

TEST_CASE("long double evaluation agrees with double")
{
    const auto p = net(20, 25, 64, 0.3, 0.1);
    CHECK(double(ub_new<long double>(p)) == doctest::Approx(ub_new(p)).epsilon(1e-12));
    CHECK(double(lb_new<long double>(p)) == doctest::Approx(lb_new(p)).epsilon(1e-12));
    CHECK(double(ub_old<long double>(p)) == doctest::Approx(ub_old(p)).epsilon(1e-12));
}

TEST_CASE("grid invariants")
{
    int points = 0;
    for_each_grid_point([&](const NetworkParams& p) {
        ++points;
        const auto b = evaluate_all(p);
        const double raw = ub_old_binomial_form(p);
        CAPTURE(p.n_sources);
        CAPTURE(p.n_relays);
        CAPTURE(p.q);
        CAPTURE(p.eps_sr);
        CAPTURE(p.eps_rd);
        REQUIRE(std::abs(raw - b.ub_old_raw) <= 1e-9 * std::max(raw, b.ub_old_raw));
        REQUIRE(b.ub_new <= std::min(1.0, b.ub_old_raw) + 1e-12);
        REQUIRE(b.lb_new <= b.ub_new + 1e-12);
        const double p0_mix = (b.delivery_weight * b.p0_rows).sum();
        REQUIRE(b.lb_new >= p0_mix - 1e-12);
        for (int w = 1; w <= p.n_sources; ++w) {
            const double g = gamma_unclamped(p, w);
            REQUIRE(g >= -1e-12);
            REQUIRE(g <= 1 + 1e-12);
        }
        for (int rows = 0; rows < p.n_sources; ++rows) REQUIRE(mu0(p, rows) >= 1.0);
        for (const double v : {b.lb_old, b.lb_new, b.ub_new, b.ub_old_clamped}) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
        if (p.n_relays > p.n_sources) {
            auto prev = p;
            prev.n_relays -= 1;
            REQUIRE(ub_new(p) <= ub_new(prev) + 1e-12);
            REQUIRE(lb_new(p) <= lb_new(prev) + 1e-12);
        }
    });
    CHECK(points == 15 * 11 * 3 * 36);
}

TEST_CASE("M below N is accepted")
{
    const auto p = net(6, 3, 4, 0.2, 0.1);
    CHECK_NOTHROW(p.validate());
    CHECK(ub_new(p) == 1.0);
    CHECK(lb_new(p) == 1.0);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(net(0, 3, 2, 0.1, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(net(3, 0, 2, 0.1, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(net(3, 3, 6, 0.1, 0.1).validate(), FieldError);
    CHECK_THROWS_AS(net(3, 3, 2, -0.1, 0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(net(3, 3, 2, 0.1, 1.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(net(3, 3, 2, std::nan(""), 0.1).validate(), std::invalid_argument);
}
