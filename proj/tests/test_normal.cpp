#include <cmath>

#include "doctest.h"
#include "imbalab/errors.hpp"
#include "imbalab/normal.hpp"
#include "oracles.hpp"

using namespace imbalab;

TEST_CASE("normal_cdf matches erfc reference and known values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
  CHECK(normal_cdf(-5.0) == doctest::Approx(2.866515718791939e-07).epsilon(1e-13));
  for (double z = -30; z <= 8; z += 0.37) CHECK(normal_cdf(z) == doctest::Approx(oracle::phi(z)).epsilon(1e-14));
  CHECK(normal_cdf(-oracle::kInf) == 0.0);
  CHECK(normal_cdf(oracle::kInf) == 1.0);
}

TEST_CASE("normal_sf is the upper tail without cancellation") {
  CHECK(normal_sf(10.0) == doctest::Approx(7.619853024160527e-24).epsilon(1e-12));
  for (double z = -5; z <= 5; z += 0.25) CHECK(normal_sf(z) + normal_cdf(z) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normal_mass picks the accurate tail") {
  CHECK(normal_mass(1.0, 1.0) == 0.0);
  CHECK(normal_mass(2.0, 1.0) == 0.0);
  CHECK(normal_mass(-oracle::kInf, oracle::kInf) == 1.0);
  CHECK(normal_mass(9.0, 10.0) == doctest::Approx(normal_sf(9.0) - normal_sf(10.0)).epsilon(1e-12));
  CHECK(normal_mass(9.0, 10.0) > 0.0);
  CHECK(normal_mass(-1.0, 1.0) == doctest::Approx(0.6826894921370859).epsilon(1e-14));
}

TEST_CASE("normal_quantile frozen values") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-15));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-15));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-14));
  CHECK(normal_quantile(1e-300) == doctest::Approx(-37.047096299361199).epsilon(1e-15));
  CHECK(normal_quantile(0.0) == -oracle::kInf);
  CHECK(normal_quantile(1.0) == oracle::kInf);
  CHECK_THROWS_AS(normal_quantile(-0.1), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.5), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::nan("")), DomainError);
}

TEST_CASE("quantile and cdf round-trip") {
  for (double u = 1e-6; u < 1.0; u += 0.0137) {
    CHECK(normal_cdf(normal_quantile(u)) == doctest::Approx(u).epsilon(1e-13));
  }
  for (double z = -8; z <= 5; z += 0.5) CHECK(normal_quantile(normal_cdf(z)) == doctest::Approx(z).epsilon(1e-9));
}
