// Copyright 2026 The ecs-optics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace ecs {

/// Worker count: the ECS_THREADS environment variable when set to a positive
/// integer, otherwise std::thread::hardware_concurrency() (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, count) across thread_count() workers. Each index
/// is visited exactly once; the body must not share mutable state across
/// indices. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ecs
