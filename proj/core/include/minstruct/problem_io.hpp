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

#ifndef MINSTRUCT_PROBLEM_IO_HPP_
#define MINSTRUCT_PROBLEM_IO_HPP_

#include <string>

#include "minstruct/problem.hpp"

namespace minstruct {

// JSON round-trip for problems. Infinite bounds are encoded as the strings
// "inf" / "-inf" because JSON numbers cannot carry them. Loading normalizes
// and validates; a malformed document throws std::invalid_argument with the
// offending path in the message.
std::string problem_to_json(const MSProblem& p);
MSProblem problem_from_json(const std::string& text);

void save_problem(const MSProblem& p, const std::string& path);
MSProblem load_problem(const std::string& path);

}  // namespace minstruct

#endif  // MINSTRUCT_PROBLEM_IO_HPP_
