// Copyright 2026 The trimcode Authors
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

#ifndef TRIMCODE_PARALLEL_H_
#define TRIMCODE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace trimcode {

// Worker cap: TCAE_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
size_t MaxThreads();

// Runs fn(i) for i in [0, n) on up to MaxThreads() threads using a static
// contiguous partition. Callers must write disjoint outputs per index; the
// result is then independent of the thread count.
void ParallelFor(size_t n, const std::function<void(size_t)>& fn);

}  // namespace trimcode

#endif  // TRIMCODE_PARALLEL_H_
