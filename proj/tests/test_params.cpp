#include <doctest.h>

#include <cmath>

#include "collapse/params.hpp"
#include "collapse/rng.hpp"

using namespace collapse;

namespace {
const PhysicalConstants pc;
}

TEST_CASE("unit working values at beta = 0") {
    ModelParams p;
    p.model = Model::DP;
    p.sigma = 1.0;
    p.mass = 1.0;
    p.beta = 0.0;
    // hbar != 1 in SI, so pick sigma/mass that make the working system explicit
    const auto d = nondimensionalize(p, pc);
    CHECK(d.x_beta_sq == 0.0);
    CHECK(d.e_sigma == doctest::Approx(pc.hbar * pc.hbar / 4.0).epsilon(1e-15));

    WorkingParams w{Model::DP, 1.0, 0.0};
    CHECK(w.x_beta_sq() == 0.0);
    CHECK(WorkingParams::e_sigma == 0.25);
}

TEST_CASE("x_beta^2 = 16/9 when kB T_beta = (9/8) E_sigma") {
    ModelParams p;
    p.model = Model::DP;
    p.sigma = 1e-10;
    p.mass = 1.67e-27;
    const double e_sigma = nondimensionalize(p, pc).e_sigma;
    p.beta = 1.0 / ((9.0 / 8.0) * e_sigma);  // kB T_beta = (9/8) E_sigma
    const auto d = nondimensionalize(p, pc);
    CHECK(d.x_beta_sq == doctest::Approx(16.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("E_sigma for a nucleon at sigma = 1 angstrom") {
    ModelParams p;
    p.model = Model::DP;
    p.sigma = 1e-10;
    p.mass = 1.67e-27;
    p.beta = 0.0;
    const auto d = nondimensionalize(p, pc);
    CHECK(d.e_sigma == doctest::Approx(1.66485287e-22).epsilon(1e-8));
}

TEST_CASE("x_beta^2 = 2 beta E_sigma identity and round trip") {
    Xoshiro256pp rng(12345);
    for (int i = 0; i < 300; ++i) {
        ModelParams p;
        p.model = i % 2 == 0 ? Model::DP : Model::CSL;
        p.sigma = std::pow(10.0, -12.0 + 6.0 * rng.uniform01());
        p.mass = std::pow(10.0, -28.0 + 4.0 * rng.uniform01());
        p.gamma_csl = std::pow(10.0, -20.0 + 12.0 * rng.uniform01());
        p.beta = 0.0;
        const double e_sigma = nondimensionalize(p, pc).e_sigma;
        p.beta = 4.0 * rng.uniform01() / e_sigma;

        const auto d = nondimensionalize(p, pc);
        CHECK(d.x_beta_sq == doctest::Approx(2.0 * p.beta * d.e_sigma).epsilon(1e-15));
        CHECK(d.x_beta_sq ==
              doctest::Approx(pc.hbar * pc.hbar * p.beta / (2.0 * p.mass * p.sigma * p.sigma))
                  .epsilon(1e-15));

        const auto back = redimensionalize(d, p.model, p.mass, pc);
        CHECK(back.sigma == doctest::Approx(p.sigma).epsilon(1e-14));
        CHECK(back.beta == doctest::Approx(p.beta).epsilon(1e-14));
        if (p.model == Model::CSL)
            CHECK(back.gamma_csl == doctest::Approx(p.gamma_csl).epsilon(1e-13));
    }
}

TEST_CASE("rate scale matches the working coupling") {
    ModelParams p;
    p.model = Model::CSL;
    p.sigma = 5e-8;
    p.mass = 2.2e-26;
    p.gamma_csl = 3e-12;
    p.beta = 0.0;
    const auto d = nondimensionalize(p, pc);
    const auto w = WorkingParams::from_si(p, pc);
    const auto u = UnitSystem::make(p, pc);
    // working beta=0 total jump rate is coupling/(8 pi^(3/2))
    CHECK(d.rate_scale ==
          doctest::Approx(u.rate_to_si(w.coupling / (8.0 * std::pow(M_PI, 1.5)))).epsilon(1e-12));
}

TEST_CASE("lambda_csl follows the m0 convention") {
    ModelParams p;
    p.model = Model::CSL;
    p.sigma = 1e-7;
    p.gamma_csl = 1e-10;
    p.mass = 1e-25;
    const double expected =
        p.gamma_csl * pc.m0 * pc.m0 / std::pow(std::sqrt(4.0 * M_PI) * p.sigma, 3);
    CHECK(p.lambda_csl(pc) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("invalid parameters are rejected") {
    ModelParams p;
    p.sigma = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.sigma = 1e-10;
    p.mass = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.mass = 1e-27;
    p.beta = -2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.beta = 0.0;
    p.model = Model::CSL;
    p.gamma_csl = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS(nondimensionalize(ModelParams{Model::DP, 0.0, 0.0, 1.0, 0.0}, pc),
                    std::invalid_argument);
}

TEST_CASE("beta = 0 is allowed and T_beta is infinite") {
    ModelParams p;
    p.beta = 0.0;
    p.validate();
    CHECK(std::isinf(p.t_beta(pc)));
}
