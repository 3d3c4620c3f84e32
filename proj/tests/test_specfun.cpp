#include <doctest.h>

#include <cmath>
#include <vector>

#include "gsw/errors.hpp"
#include "gsw/random.hpp"
#include "gsw/simkit.hpp"
#include "gsw/specfun.hpp"

using namespace gsw;

namespace {

// Monte Carlo frequency of {|eta + xi| > lambda}, xi ~ CN(0,1). Independent
// of the series implementation; standard error from the analytic probability
// so zero-hit cells still carry a meaningful band.
double exceedance_frequency(double eta, double lambda, long long n, std::uint64_t seed) {
    RandomStream s(seed, 0);
    long long hits = 0;
    for (long long i = 0; i < n; ++i) {
        const cplx xi = s.next_cgaussian();
        if (std::hypot(eta + xi.real(), xi.imag()) > lambda) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

// Importance-sampled oracle for the complex rho constant: with T = |xi|^2
// unit-mean exponential, rho = e^{-lambda^2} E_s[(lambda^2+s) g(sqrt(lambda^2+s))^2],
// s ~ Exp(1). Sharp even deep in the rare-event regime.
struct IsEstimate {
    double value;
    double stderr_mean;
};

IsEstimate rho_complex_importance(double lambda, long long n, std::uint64_t seed) {
    RandomStream stream(seed, 1);
    const Threshold th{lambda};
    const double l2 = lambda * lambda;
    double sum = 0.0;
    double sum2 = 0.0;
    for (long long i = 0; i < n; ++i) {
        const double s = -std::log(1.0 - stream.next_unit());
        const double t = l2 + s;
        const double g = gsw_gain(std::sqrt(t), th);
        const double v = t * g * g;
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double var = (sum2 - n * mean * mean) / (n - 1.0);
    const double scale = std::exp(-l2);
    return {scale * mean, scale * std::sqrt(var / n)};
}

} // namespace

TEST_SUITE("specfun") {

TEST_CASE("gaussian_pdf values and symmetry") {
    CHECK(gaussian_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    // direct evaluation of exp(-x^2/2)/sqrt(2 pi) at x = 1.5, extended precision
    CHECK(gaussian_pdf(1.5) == doctest::Approx(0.12951759566589174).epsilon(1e-15));
    for (const double x : {0.1, 0.7, 1.9, 3.3, 7.5}) {
        CHECK(gaussian_pdf(x) == gaussian_pdf(-x));
        CHECK(gaussian_pdf(x) > 0.0);
    }
    CHECK_THROWS_AS(gaussian_pdf(std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(gaussian_pdf(std::nan("")), std::domain_error);
}

TEST_CASE("gaussian_q against the quadrature oracle") {
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(gaussian_q(10.0) < 1e-20);
    // independent oracle: adaptive quadrature of the density over [x, 40]
    QuadratureSpec tight;
    tight.abs_tol = 1e-15;
    for (const double x : {0.5, 1.0, 2.0, 4.0}) {
        const double oracle =
            integrate_adaptive([](double t) { return gaussian_pdf(t); }, x, 40.0, tight);
        CHECK(gaussian_q(x) == doctest::Approx(oracle).epsilon(1e-12));
    }
    CHECK(gaussian_q(1.0) == doctest::Approx(0.1586552539).epsilon(1e-9));
    for (const double x : {-6.0, -1.25, 0.0, 0.5, 3.0, 8.0}) {
        CHECK(std::abs(gaussian_q(x) + gaussian_q(-x) - 1.0) < 1e-14);
    }
    double prev = gaussian_q(-8.0);
    for (double x = -7.5; x <= 8.0; x += 0.5) {
        const double q = gaussian_q(x);
        CHECK(q < prev);
        prev = q;
    }
    CHECK_THROWS_AS(gaussian_q(std::nan("")), std::domain_error);
}

TEST_CASE("adaptive quadrature basics") {
    QuadratureSpec spec;
    CHECK(integrate_adaptive([](double x) { return x * x * x * x; }, 0.0, 1.0, spec) ==
          doctest::Approx(0.2).epsilon(1e-13));
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, spec) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0, spec) == 0.0);

    QuadratureSpec starved;
    starved.abs_tol = 1e-15;
    starved.rel_tol = 1e-15;
    starved.max_subdivisions = 2;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / std::sqrt(x + 1e-30); }, 0.0,
                                       1.0, starved),
                    numerical_error);

    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = QuadratureSpec{};
    bad.max_subdivisions = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("threshold domain") {
    CHECK(Threshold{2.0}.value() == 2.0);
    CHECK_THROWS_AS(Threshold{1.999}, std::domain_error);
    CHECK_THROWS_AS(Threshold{std::nan("")}, std::domain_error);
    CHECK_THROWS_AS(Threshold{std::numeric_limits<double>::infinity()}, std::domain_error);
}

TEST_CASE("marcum_q1 boundary branches") {
    for (const double a : {0.0, 0.5, 3.0, 50.0}) CHECK(marcum_q1(a, 0.0) == 1.0);
    for (const double b : {0.3, 1.0, 4.0}) {
        CHECK(marcum_q1(0.0, b) == doctest::Approx(std::exp(-0.5 * b * b)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(marcum_q1(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(marcum_q1(1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(marcum_q1(std::nan(""), 1.0), std::domain_error);
}

TEST_CASE("marcum_q1 monotonicity") {
    double prev = marcum_q1(0.0, 3.0);
    for (double a = 0.25; a <= 6.0; a += 0.25) {
        const double q = marcum_q1(a, 3.0);
        CHECK(q >= prev);
        prev = q;
    }
    prev = marcum_q1(2.0, 0.0);
    for (double b = 0.25; b <= 6.0; b += 0.25) {
        const double q = marcum_q1(2.0, b);
        CHECK(q <= prev);
        prev = q;
    }
}

TEST_CASE("marcum_q1 matches the noncentral exceedance simulation") {
    // Pr(|eta + xi| > lambda) with eta = a/sqrt(2), lambda = b/sqrt(2).
    const long long n = 10000000;
    const double q = marcum_q1(1.0, 2.0);
    const double freq = exceedance_frequency(1.0 / M_SQRT2, M_SQRT2, n, 2024);
    const double se = std::sqrt(q * (1.0 - q) / static_cast<double>(n));
    CHECK(std::abs(q - freq) < 3 * se);
}

TEST_CASE("marcum_q1 on the 6x6 simulation grid") {
    const double grid[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    const long long n = 1000000;
    std::uint64_t cell = 0;
    for (const double a : grid) {
        for (const double b : grid) {
            ++cell;
            const double q = marcum_q1(a, b);
            const double freq = exceedance_frequency(a / M_SQRT2, b / M_SQRT2, n, 5000 + cell);
            const double se = std::sqrt(std::max(q * (1.0 - q), 1e-30) / static_cast<double>(n));
            CAPTURE(a);
            CAPTURE(b);
            CHECK(std::abs(q - freq) <= 3 * se + 1e-12);
        }
    }
}

TEST_CASE("complex exceedance probability") {
    const Threshold two{2.0};
    CHECK(exceedance_prob_complex(0.0, two) == doctest::Approx(std::exp(-4.0)).epsilon(1e-13));
    const Threshold univ{4.09};
    const double p_big = exceedance_prob_complex(10.0, univ);
    CHECK(p_big > 0.999);
    CHECK(p_big <= 1.0);
    double prev = exceedance_prob_complex(0.0, univ);
    for (double eta = 0.5; eta <= 12.0; eta += 0.5) {
        const double p = exceedance_prob_complex(eta, univ);
        CHECK(p >= prev - 1e-15); // one-ulp slack where p saturates at 1
        prev = p;
    }
    CHECK_THROWS_AS(exceedance_prob_complex(-1.0, two), std::domain_error);
}

TEST_CASE("real exceedance probability") {
    const Threshold two{2.0};
    CHECK(exceedance_prob_real(0.0, two) ==
          doctest::Approx(2.0 * gaussian_q(2.0)).epsilon(1e-14));
    CHECK(exceedance_prob_real(0.0, two) == doctest::Approx(0.04550026).epsilon(1e-7));
    const Threshold univ{4.09};
    for (const double eta : {0.3, 1.0, 2.5, 7.0}) {
        CHECK(exceedance_prob_real(eta, univ) == exceedance_prob_real(-eta, univ));
    }
    CHECK(std::abs(exceedance_prob_real(100.0, univ) - 1.0) < 1e-12);
}

TEST_CASE("rho complex: closed form vs Monte Carlo oracle") {
    const double rho2 = rho_gsw_complex(Threshold{2.0});
    const auto mc = mc_rho_oracle(Threshold{2.0}, Field::Complex, 10000000, 91, 0);
    CHECK(std::abs(rho2 - mc.estimate) < 3 * mc.stderr_mean);

    // rare-event regime: importance sampling on |xi|^2 ~ Exp(1)
    const double lam = 4.09;
    const auto is = rho_complex_importance(lam, 1000000, 77);
    CHECK(std::abs(rho_gsw_complex(Threshold{lam}) - is.value) < 3 * is.stderr_mean);
}

TEST_CASE("rho complex: tail behavior and monotonicity") {
    CHECK(rho_gsw_complex(Threshold{8.0}) < 1e-24);
    CHECK(rho_gsw_complex(Threshold{8.0}) > 0.0);
    double prev = rho_gsw_complex(Threshold{2.0});
    for (double lam = 2.25; lam <= 8.0 + 1e-9; lam += 0.25) {
        const double r = rho_gsw_complex(Threshold{lam});
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("rho complex: two evaluation routes agree") {
    // merged-integrand route: integral of [(t-2)/2 + sqrt(t^2-4t)/2] e^{-t}
    // over [lambda^2, inf); the (t-2)/2 part reproduces the closed-form term.
    QuadratureSpec tight;
    tight.abs_tol = 1e-14;
    for (const double lam : {2.0, 2.5, 3.0, 4.0886144077348225, 6.0}) {
        const double l2 = lam * lam;
        // same substitution t = 4 + s^2 to keep the branch point out
        const auto merged = [](double s) {
            const double t = 4.0 + s * s;
            return (0.5 * (t - 2.0) + 0.5 * std::sqrt(t * t - 4.0 * t)) * std::exp(-t) * 2.0 * s;
        };
        const double via_integral =
            integrate_adaptive(merged, std::sqrt(std::max(l2 - 4.0, 0.0)), std::sqrt(l2 + 56.0),
                               tight);
        CHECK(std::abs(rho_gsw_complex(Threshold{lam}) - via_integral) < 1e-10);
    }
}

TEST_CASE("rho real: closed form, reduction at lambda = 2, tail") {
    const double expected2 =
        2.0 * gaussian_pdf(2.0) + 0.5 * std::exp(-2.0) - gaussian_q(2.0);
    CHECK(rho_gsw_real(Threshold{2.0}) == doctest::Approx(expected2).epsilon(1e-15));
    CHECK(rho_gsw_real(Threshold{8.0}) < 1e-12);

    const auto mc = mc_rho_oracle(Threshold{3.0}, Field::Real, 10000000, 92, 0);
    CHECK(std::abs(rho_gsw_real(Threshold{3.0}) - mc.estimate) < 3 * mc.stderr_mean);

    double prev = rho_gsw_real(Threshold{2.0});
    for (double lam = 2.25; lam <= 8.0 + 1e-9; lam += 0.25) {
        const double r = rho_gsw_real(Threshold{lam});
        CHECK(r < prev);
        prev = r;
    }
}

} // TEST_SUITE
