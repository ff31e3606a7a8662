// Copyright 2026 The minstruct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "minstruct/rng.hpp"

using minstruct::Rng;

TEST_CASE("rng: identical seeds give identical streams") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng: different seeds diverge") {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (a.next_u64() == b.next_u64());
  CHECK(same == 0);
}

TEST_CASE("rng: uniform01 stays inside [0, 1)") {
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("rng: uniform_below covers the full range") {
  Rng r(99);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 5000; ++i) ++seen[r.uniform_below(5)];
  for (int k = 0; k < 5; ++k) CHECK(seen[k] > 0);
  CHECK_THROWS_AS(r.uniform_below(0), std::invalid_argument);
}

TEST_CASE("rng: uniform_int covers endpoints and rejects empty ranges") {
  Rng r(3);
  bool lo_seen = false, hi_seen = false;
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t v = r.uniform_int(-2, 3);
    CHECK(v >= -2);
    CHECK(v <= 3);
    lo_seen = lo_seen || v == -2;
    hi_seen = hi_seen || v == 3;
  }
  CHECK(lo_seen);
  CHECK(hi_seen);
  CHECK(r.uniform_int(4, 4) == 4);
  CHECK_THROWS_AS(r.uniform_int(1, 0), std::invalid_argument);
}

TEST_CASE("rng: exponential with zero mean collapses to zero") {
  Rng r(5);
  CHECK(r.exponential(0.0) == 0.0);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double v = r.exponential(2.0);
    CHECK(v >= 0.0);
    sum += v;
  }
  // Sample mean of Exp(mean=2) over 2e4 draws; generous band.
  CHECK(sum / 20000.0 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("rng: split streams are deterministic and distinct") {
  Rng root(42);
  Rng c1 = root.split(1);
  Rng c2 = root.split(2);
  Rng c1_again = Rng(42).split(1);
  int same12 = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t a = c1.next_u64();
    const std::uint64_t b = c2.next_u64();
    CHECK(a == c1_again.next_u64());
    same12 += (a == b);
  }
  CHECK(same12 == 0);
}

TEST_CASE("rng: split does not advance the parent stream") {
  Rng a(11), b(11);
  (void)a.split(1);
  (void)a.split(2);
  CHECK(a.next_u64() == b.next_u64());
}
