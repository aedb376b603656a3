// Copyright 2026 The dpconsensus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpc/error.hpp"
#include "dpc/noise.hpp"

using namespace dpc;

namespace {

NoiseSchedule exp_schedule(double c, double g) { return {c, Exponential{g}}; }
NoiseSchedule poly_schedule(double c, int power) {
  return {c, Polynomial{power}};
}

}  // namespace

TEST_CASE("scale examples") {
  CHECK(scale_at(exp_schedule(1.2, 0.9), 0) == 1.2);
  CHECK(scale_at(poly_schedule(1.0, 2), 1) == 0.25);
  CHECK(scale_at(exp_schedule(2.0, 0.8), 3) ==
        doctest::Approx(1.024).epsilon(1e-15));
}

TEST_CASE("custom schedule bounds") {
  const NoiseSchedule s{1.5, Custom{{1.0, 0.5}}};
  CHECK(scale_at(s, 1) == 0.75);
  CHECK_THROWS_AS(scale_at(s, 2), ValidationError);
  CHECK_THROWS_AS(scale_at(s, -1), ValidationError);
}

TEST_CASE("scales are nonincreasing for built-in kinds") {
  for (const NoiseSchedule& s :
       {exp_schedule(1.0, 0.95), exp_schedule(3.0, 0.1), poly_schedule(2.0, 1),
        poly_schedule(1.0, 3)}) {
    for (long k = 0; k < 500; ++k) CHECK(scale_at(s, k + 1) <= scale_at(s, k));
  }
}

TEST_CASE("summability") {
  CHECK(is_summable(exp_schedule(1.0, 0.95)));
  CHECK_FALSE(is_summable(poly_schedule(1.0, 1)));
  CHECK(is_summable(poly_schedule(1.0, 2)));

  std::vector<double> geometric, harmonic, finite(5, 1.0);
  for (int k = 0; k < 3000; ++k) {
    geometric.push_back(std::pow(0.99, k));
    harmonic.push_back(1.0 / (k + 1));
  }
  CHECK(is_summable({1.0, Custom{geometric}}));
  CHECK_FALSE(is_summable({1.0, Custom{harmonic}}));
  std::vector<double> vanishing(2000, 0.0);
  vanishing[0] = 1.0;
  CHECK(is_summable({1.0, Custom{vanishing}}));
  CHECK(is_summable({1.0, Custom{{1.0}}}));
  CHECK_FALSE(is_summable({1.0, Custom{finite}}));
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(exp_schedule(1.0, 1.0).validate(), ValidationError);
  CHECK_THROWS_AS(exp_schedule(1.0, 0.0).validate(), ValidationError);
  CHECK_THROWS_AS(exp_schedule(-1.0, 0.5).validate(), ValidationError);
  CHECK_THROWS_AS(poly_schedule(1.0, 0).validate(), ValidationError);
  CHECK_THROWS_AS((NoiseSchedule{1.0, Custom{{1.0, -0.1}}}.validate()),
                  ValidationError);
  CHECK_NOTHROW(exp_schedule(0.0, 0.5).validate());
  CHECK(exp_schedule(1.0, 0.9).decay() == 0.9);
  CHECK_THROWS_AS(poly_schedule(1.0, 2).decay(), ValidationError);
}

// Known-answer vectors published with the Random123 reference implementation.
TEST_CASE("philox4x32-10 known answers") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                      {0xffffffffu, 0xffffffffu}) ==
        PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                      {0xa4093822u, 0x299f31d0u}) ==
        PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are deterministic and distinct") {
  const RngSpec spec{42};
  CounterRng a(spec, {1, 2, 3, StreamPurpose::kNoise});
  CounterRng b(spec, {1, 2, 3, StreamPurpose::kNoise});
  CounterRng c(spec, {1, 2, 4, StreamPurpose::kNoise});
  CounterRng d(spec, {1, 2, 3, StreamPurpose::kInitialState});
  CounterRng e(RngSpec{43}, {1, 2, 3, StreamPurpose::kNoise});
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
    CHECK(va != d.next_u64());
    CHECK(va != e.next_u64());
  }
}

TEST_CASE("uniform_open stays inside the open interval") {
  CounterRng rng(RngSpec{7}, {});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(u != 0.5);
  }
}

TEST_CASE("laplace inverse CDF") {
  CHECK(laplace_from_centered_uniform(0.0, 1.0) == 0.0);
  CHECK(laplace_from_centered_uniform(0.25, 1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(laplace_from_centered_uniform(-0.25, 2.0) ==
        doctest::Approx(-2 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("laplace sampler rejects nonpositive scale") {
  CounterRng rng(RngSpec{1}, {});
  CHECK_THROWS_AS(sample_laplace(rng, 0.0, 2), ValidationError);
  CHECK_THROWS_AS(sample_laplace(rng, -1.0, 2), ValidationError);
}

TEST_CASE("laplace sampler moments and KS distance") {
  constexpr int kDraws = 1000000;
  std::vector<double> xs;
  xs.reserve(kDraws);
  for (std::uint32_t block = 0; block < 1000; ++block) {
    CounterRng rng(RngSpec{2026}, {0, block, 0, StreamPurpose::kNoise});
    const Vector v = sample_laplace(rng, 1.0, kDraws / 1000);
    xs.insert(xs.end(), v.data(), v.data() + v.size());
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= kDraws;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= kDraws - 1;
  CHECK(std::fabs(mean) <= 0.0042);
  CHECK(std::fabs(var - 2.0) <= 0.1);

  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = xs[i];
    const double F = x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    ks = std::max({ks, std::fabs(F - static_cast<double>(i) / kDraws),
                   std::fabs(F - static_cast<double>(i + 1) / kDraws)});
  }
  CHECK(ks < 0.002);
}
