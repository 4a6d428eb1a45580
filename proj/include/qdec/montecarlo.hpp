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

// Seeded, order-independent Monte Carlo trials and summary statistics.
//
// Trial i always draws from make_stream(seed, i), and results are stored by
// index before any reduction, so outcomes do not depend on the thread count.

#ifndef QDEC_MONTECARLO_HPP
#define QDEC_MONTECARLO_HPP

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "qdec/random.hpp"

namespace qdec {

/// Worker threads: QDEC_THREADS if set and positive, else the hardware count.
int thread_count();

struct SampleStats {
  long long n = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;  // sample standard deviation / sqrt(n)
  double mean_square = 0.0;
};

SampleStats summarize(const std::vector<double>& samples);

/// Calls f(rng, i) for i in [0, n) with independent streams and returns the
/// results in index order.
template <class R, class F>
std::vector<R> run_trials(long long n, std::uint64_t seed, F&& f) {
  std::vector<R> out(static_cast<std::size_t>(n));
  const int workers = static_cast<int>(std::min<long long>(thread_count(), std::max<long long>(n, 1)));
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&](int w) {
    try {
      for (long long i = w; i < n; i += workers) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = f(rng, i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (workers <= 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace qdec

#endif  // QDEC_MONTECARLO_HPP
