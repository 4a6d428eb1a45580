// Copyright 2026 The qdec Authors
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

#include "qdec/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace qdec {

int thread_count() {
  if (const char* env = std::getenv("QDEC_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SampleStats summarize(const std::vector<double>& samples) {
  SampleStats s;
  s.n = static_cast<long long>(samples.size());
  if (s.n == 0) return s;
  double sum = 0.0, sq = 0.0;
  for (double x : samples) {
    sum += x;
    sq += x * x;
  }
  s.mean = sum / static_cast<double>(s.n);
  s.mean_square = sq / static_cast<double>(s.n);
  if (s.n > 1) {
    double var = 0.0;
    for (double x : samples) var += (x - s.mean) * (x - s.mean);
    var /= static_cast<double>(s.n - 1);
    s.stderr_mean = std::sqrt(var / static_cast<double>(s.n));
  }
  return s;
}

}  // namespace qdec
