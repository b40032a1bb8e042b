// Copyright 2026 The dppref Authors.
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

#include "dppref/rng.h"

namespace dppref {
namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr uint64_t kPartSalt = 0x2545f4914f6cdd1dULL;

}  // namespace

uint64_t DeriveSeed(uint64_t master_seed,
                    std::initializer_list<uint64_t> parts) {
  uint64_t h = SplitMix64(master_seed);
  // Rotating the running hash keeps a part equal to the master seed (or to
  // an earlier part) from cancelling out.
  for (uint64_t p : parts) {
    h = SplitMix64(((h << 23) | (h >> 41)) ^ SplitMix64(p ^ kPartSalt));
  }
  return h;
}

RngStream::RngStream(uint64_t master_seed, int64_t voter_id,
                     StreamPurpose purpose) {
  const uint64_t id = static_cast<uint64_t>(voter_id);
  const uint64_t tag = static_cast<uint64_t>(purpose);
  std::seed_seq seq{static_cast<uint32_t>(master_seed),
                    static_cast<uint32_t>(master_seed >> 32),
                    static_cast<uint32_t>(id), static_cast<uint32_t>(id >> 32),
                    static_cast<uint32_t>(tag)};
  engine_.seed(seq);
}

double RngStream::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::StandardNormal() { return normal_(engine_); }

}  // namespace dppref
