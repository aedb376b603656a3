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
#ifndef DPC_NOISE_HPP_
#define DPC_NOISE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dpc/matops.hpp"

namespace dpc {

// p(k) = g^k
struct Exponential {
  double g = 0.9;
};

// p(k) = (k + 1)^(-power)
struct Polynomial {
  int power = 2;
};

// p(k) given explicitly for k = 0 .. p.size() - 1
struct Custom {
  std::vector<double> p;
};

using ScheduleKind = std::variant<Exponential, Polynomial, Custom>;

// Laplace scale b(k) = c * p(k). A zero `c` switches the agent's noise off;
// the privacy calculus rejects it.
struct NoiseSchedule {
  double c = 1.0;
  ScheduleKind kind = Exponential{};

  void validate() const;
  bool is_exponential() const {
    return std::holds_alternative<Exponential>(kind);
  }
  // Decay ratio of an exponential schedule; throws otherwise.
  double decay() const;
};

double scale_at(const NoiseSchedule& s, long k);
bool is_summable(const NoiseSchedule& s);
std::string describe(const NoiseSchedule& s);

// ---------------------------------------------------------------------------
// Counter-based random numbers.
//
// Every draw is a pure function of (master seed, run, agent, step, purpose,
// block index), so Monte Carlo runs never share generator state and any run
// can be regenerated in isolation.

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

enum class StreamPurpose : std::uint32_t {
  kNoise = 0,
  kInitialState = 1,
  kParameters = 2,
};

struct StreamId {
  std::uint32_t run = 0;
  std::uint32_t agent = 0;
  std::uint32_t step = 0;
  StreamPurpose purpose = StreamPurpose::kNoise;
};

struct RngSpec {
  std::uint64_t master_seed = 0;
};

class CounterRng {
 public:
  CounterRng(RngSpec spec, StreamId id);

  // Uniform on the open interval (0, 1) with 52 random bits; every value is
  // an odd multiple of 2^-53, so 0, 1/2 and 1 are never produced.
  double uniform_open();
  std::uint64_t next_u64();

 private:
  PhiloxKey key_;
  PhiloxCounter base_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // words consumed from buffer_
};

// Laplace(0, b) quantile at probability 1/2 + u, for u in (-1/2, 1/2).
double laplace_from_centered_uniform(double u, double b);

// `dim` independent Laplace(0, b) draws. Throws ValidationError if b <= 0.
Vector sample_laplace(CounterRng& rng, double b, int dim);

}  // namespace dpc

#endif  // DPC_NOISE_HPP_
