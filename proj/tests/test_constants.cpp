/*
 * (C) Copyright 2026 qdotthermo developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include <doctest.h>

#include "qdt/constants.hpp"

using namespace qdt;

TEST_CASE("kelvin_to_angular_rate matches the CODATA conversion") {
  // k_B/hbar = 1.380649e-23 / 1.054571817e-34 * 1e-12 ps^-1/K, evaluated
  // independently.
  CHECK(constants::kb_over_hbar_ps_inv_per_K ==
        doctest::Approx(0.13092033920720642).epsilon(1e-12));
  CHECK(kelvin_to_angular_rate(0.0) == 0.0);
  CHECK(kelvin_to_angular_rate(20.0) ==
        doctest::Approx(2.6184067841441285).epsilon(1e-12));
  CHECK(kelvin_to_angular_rate(2.7) ==
        doctest::Approx(0.35348491585945735).epsilon(1e-12));
}

TEST_CASE("round trip kelvin <-> rate") {
  for (double t : {0.01, 1.0, 4.2, 77.0, 300.0}) {
    CHECK(angular_rate_to_kelvin(kelvin_to_angular_rate(t)) ==
          doctest::Approx(t).epsilon(1e-14));
  }
}

TEST_CASE("energy unit bridges") {
  CHECK(constants::hbar_meV_ps == doctest::Approx(0.65821195654).epsilon(1e-9));
  CHECK(constants::debye_C_m == doctest::Approx(3.33564e-30).epsilon(1e-5));
  CHECK(constants::ps_inv2_to_watt ==
        doctest::Approx(1.054571817e-10).epsilon(1e-12));
}
