// SPDX-License-Identifier: Apache-2.0
//
// sibeam - beamformed self-interference modeling and analysis for
// multi-panel mmWave full-duplex systems
// Copyright (C) 2026 sibeam contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <functional>

namespace sibeam
{

// Number of worker threads used when a caller passes 0.
unsigned default_thread_count();

// Runs fn(begin, end) over contiguous, disjoint chunks of [0, n).
// Each index is processed by exactly one worker, so results are independent
// of the thread count as long as fn writes only to index-owned outputs.
// threads == 0 selects default_thread_count(). Exceptions thrown by workers
// are rethrown on the calling thread.
void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)> &fn);

} // namespace sibeam
