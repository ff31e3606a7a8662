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

#include "minstruct/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace minstruct {

double CostModel::time(std::size_t s) const {
  return fixed_cost + std::pow(static_cast<double>(s), exponent);
}

CostModel CostModel::matched(std::size_t m, double exponent) {
  // fixed + m^r = 1000 * fixed  =>  fixed = m^r / 999.
  CostModel c;
  c.exponent = exponent;
  c.fixed_cost = std::pow(static_cast<double>(m), exponent) / 999.0;
  return c;
}

Oracle::Oracle(const MSProblem& problem, CostModel cost)
    : problem_(problem), cost_(cost) {}

const OracleResult& Oracle::solve_piece(int piece, const IndexSet& S) {
  if (piece < 0 || piece >= problem_.n()) {
    throw std::invalid_argument("solve_piece: piece index out of range");
  }
  for (int j : S) {
    if (j < 0 || j >= problem_.m()) {
      throw std::invalid_argument("solve_piece: constraint index out of range");
    }
  }
  const std::pair<int, std::vector<int>> key{piece, S.elements()};
  {
    std::shared_lock<std::shared_mutex> lock(mutex_);
    const auto it = cache_.find(key);
    if (it != cache_.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }
  OracleResult result = solve_uncached(piece, S);
  std::unique_lock<std::shared_mutex> lock(mutex_);
  const auto [it, inserted] = cache_.emplace(key, std::move(result));
  if (inserted) {
    ++misses_;
    model_time_ += cost_.time(S.size());
  } else {
    hits_.fetch_add(1, std::memory_order_relaxed);
  }
  return it->second;
}

std::pair<int, const OracleResult*> Oracle::solve_model(const IndexSet& H,
                                                        const IndexSet& S) {
  if (H.empty()) {
    throw std::invalid_argument("solve_model: empty piece subset");
  }
  int best_piece = -1;
  const OracleResult* best = nullptr;
  for (int i : H) {
    const OracleResult& r = solve_piece(i, S);
    if (best == nullptr || r.value < best->value) {
      best_piece = i;
      best = &r;
    }
  }
  return {best_piece, best};
}

OracleStats Oracle::stats() const {
  std::shared_lock<std::shared_mutex> lock(mutex_);
  OracleStats s;
  s.hits = hits_.load(std::memory_order_relaxed);
  s.misses = misses_;
  s.model_time = model_time_;
  return s;
}

}  // namespace minstruct
