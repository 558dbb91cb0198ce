// Copyright 2026 The randcorr Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace randcorr {

/// Worker count used by the data-parallel engines. Defaults to the value of
/// RANDCORR_THREADS, or 1 when unset.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Runs body(i) for i in [0, n). Tasks are claimed dynamically, so callers
/// must write results into slot i and reduce in index order afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace randcorr
