// Copyright 2026 The LineageLab Authors
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

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include "lineagelab/hash.hpp"

namespace lineagelab {

/// Runs body(i) for i in [0, n). Under ExecPolicy::parallel iterations are
/// spread over OpenMP threads with dynamic scheduling. The first exception
/// thrown by any iteration is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, ExecPolicy policy, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mutex;
  const bool go_parallel = policy == ExecPolicy::parallel && n > 1;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (go_parallel)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace lineagelab
