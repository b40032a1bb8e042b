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

#ifndef DPPREF_RNG_H_
#define DPPREF_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dppref {

// What a stream is used for. Part of the stream key, so the same voter gets
// unrelated draws for different purposes.
enum class StreamPurpose : uint32_t {
  kSocietyMean = 1,
  kTrueBeta = 2,
  kRecords = 3,
  kCentralNoise = 4,
  kVoterNoise = 5,
  kObjectiveNoise = 6,
  kPrivacyGroups = 7,
  kTestScenarios = 8,
  kNeighbors = 9,
};

// Mixes a master seed with extra words into a new 64-bit seed (SplitMix64
// finalizer chain). Used to derive per-trial and per-cell seeds.
uint64_t DeriveSeed(uint64_t master_seed, std::initializer_list<uint64_t> parts);

// A reproducible random stream keyed by (master seed, voter id, purpose).
// Identical keys give identical sequences; distinct keys seed the engine
// from unrelated states.
class RngStream {
 public:
  RngStream(uint64_t master_seed, int64_t voter_id, StreamPurpose purpose);

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  double StandardNormal();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dppref

#endif  // DPPREF_RNG_H_
