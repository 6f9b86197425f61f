// Copyright 2026 The snakeweaver Authors
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

namespace snakeweaver {

// Worker count for internal parallel loops. Defaults to SNAKEWEAVER_THREADS
// when set, else 1.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Runs f(0), ..., f(n-1) on up to thread_count() threads. The first exception
// thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace snakeweaver
