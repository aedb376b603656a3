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
#include "dpc/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpc/error.hpp"

namespace dpc {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

// The block index shares the last counter word with the purpose tag.
constexpr std::uint32_t kBlockBits = 28;
constexpr std::uint32_t kMaxBlocks = 1u << kBlockBits;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
             std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

void NoiseSchedule::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ValidationError("noise scale c must be finite and >= 0");
  }
  if (const auto* e = std::get_if<Exponential>(&kind)) {
    if (!(e->g > 0.0 && e->g < 1.0)) {
      std::ostringstream os;
      os << "exponential decay g must lie in (0, 1), got " << e->g;
      throw ValidationError(os.str());
    }
  } else if (const auto* p = std::get_if<Polynomial>(&kind)) {
    if (p->power < 1) {
      throw ValidationError("polynomial power must be a positive integer");
    }
  } else {
    for (double v : std::get<Custom>(kind).p) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ValidationError("custom schedule entries must be finite and >= 0");
      }
    }
  }
}

double NoiseSchedule::decay() const {
  if (const auto* e = std::get_if<Exponential>(&kind)) return e->g;
  throw ValidationError("schedule is not exponential: " + describe(*this));
}

double scale_at(const NoiseSchedule& s, long k) {
  if (k < 0) throw ValidationError("scale_at: step must be >= 0");
  if (const auto* e = std::get_if<Exponential>(&s.kind)) {
    return s.c * std::pow(e->g, static_cast<double>(k));
  }
  if (const auto* p = std::get_if<Polynomial>(&s.kind)) {
    return s.c * std::pow(static_cast<double>(k + 1), -p->power);
  }
  const auto& seq = std::get<Custom>(s.kind).p;
  if (static_cast<std::size_t>(k) >= seq.size()) {
    throw ValidationError("custom schedule has " + std::to_string(seq.size()) +
                          " entries, step " + std::to_string(k) +
                          " requested");
  }
  return s.c * seq[static_cast<std::size_t>(k)];
}

bool is_summable(const NoiseSchedule& s) {
  if (std::holds_alternative<Exponential>(s.kind)) return true;
  if (const auto* p = std::get_if<Polynomial>(&s.kind)) return p->power >= 2;

  // Custom sequences: judged from their trailing behaviour. Summable if the
  // trailing 1000 terms no longer move the partial sum, or if consecutive
  // ratios over the trailing window stay uniformly below 1.
  const auto& seq = std::get<Custom>(s.kind).p;
  if (seq.size() < 2) return true;
  constexpr std::size_t kWindow = 1000;
  double total = 0.0;
  for (double v : seq) total += v;
  const std::size_t start = seq.size() > kWindow ? seq.size() - kWindow : 0;
  double trailing = 0.0;
  for (std::size_t k = start; k < seq.size(); ++k) trailing += seq[k];
  if (seq.size() > kWindow && trailing <= 1e-12 * (1.0 + total)) return true;

  double worst_ratio = 0.0;
  for (std::size_t k = std::max<std::size_t>(start, 1); k < seq.size(); ++k) {
    if (seq[k - 1] == 0.0) {
      if (seq[k] != 0.0) return false;
      continue;
    }
    worst_ratio = std::max(worst_ratio, seq[k] / seq[k - 1]);
  }
  return worst_ratio < 1.0 - 1e-3;
}

std::string describe(const NoiseSchedule& s) {
  std::ostringstream os;
  os << "c=" << s.c << " ";
  if (const auto* e = std::get_if<Exponential>(&s.kind)) {
    os << "exponential(g=" << e->g << ")";
  } else if (const auto* p = std::get_if<Polynomial>(&s.kind)) {
    os << "polynomial(power=" << p->power << ")";
  } else {
    os << "custom(" << std::get<Custom>(s.kind).p.size() << " terms)";
  }
  return os.str();
}

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

CounterRng::CounterRng(RngSpec spec, StreamId id)
    : key_{static_cast<std::uint32_t>(spec.master_seed),
           static_cast<std::uint32_t>(spec.master_seed >> 32)},
      base_{id.run, id.agent, id.step,
            static_cast<std::uint32_t>(id.purpose) << kBlockBits} {}

std::uint64_t CounterRng::next_u64() {
  if (used_ >= 4) {
    if (block_ >= kMaxBlocks) {
      throw NumericError("random stream exhausted");
    }
    PhiloxCounter ctr = base_;
    ctr[3] |= block_++;
    buffer_ = philox4x32_10(ctr, key_);
    used_ = 0;
  }
  const std::uint64_t hi = buffer_[used_];
  const std::uint64_t lo = buffer_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double CounterRng::uniform_open() {
  const std::uint64_t k = next_u64() >> 12;  // 52 bits
  return static_cast<double>(2 * k + 1) * 0x1p-53;
}

double laplace_from_centered_uniform(double u, double b) {
  if (u == 0.0) return 0.0;
  const double magnitude = -b * std::log1p(-2.0 * std::fabs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

Vector sample_laplace(CounterRng& rng, double b, int dim) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw ValidationError("Laplace scale must be positive and finite");
  }
  Vector out(dim);
  for (int i = 0; i < dim; ++i) {
    double u;
    do {
      u = rng.uniform_open() - 0.5;
    } while (u == -0.5 || 1.0 - 2.0 * std::fabs(u) == 0.0);
    out(i) = laplace_from_centered_uniform(u, b);
  }
  return out;
}

}  // namespace dpc
