// Copyright 2026 The ecsmetro Authors
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

// Compares the entangled force probe with the single-mode coherent probe at
// a few matched energy shifts and prints both Helstrom errors.

#include <cstdio>

#include "ecs/ecs.hpp"

int main() {
    const double alpha = 1.0;
    std::printf("%8s %12s %12s %12s\n", "epsilon", "|overlap|", "Pe(ECS)", "Pe(coherent)");
    for (double eps : {0.25, 1.0, 4.0}) {
        const auto cmp = ecs::error_comparison(alpha, eps);
        std::printf("%8.3f %12.6f %12.6f %12.6f\n", eps, std::abs(cmp.force_overlap), cmp.pe_ecs,
                    cmp.pe_coherent);
    }
    return 0;
}
