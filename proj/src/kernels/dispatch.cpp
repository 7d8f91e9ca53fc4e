// Copyright 2026 The ohe Authors
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

#include "ohe/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ohe::kern {

#ifndef OHE_HAVE_AVX2
const Backend* avx2_backend() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend* select() {
    if (const char* env = std::getenv("OHE_BACKEND")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_backend();
        if (std::strcmp(env, "avx2") == 0 && avx2_backend() &&
            cpu_has_avx2_fma())
            return avx2_backend();
    }
    if (avx2_backend() && cpu_has_avx2_fma()) return avx2_backend();
    return &scalar_backend();
}

}  // namespace

const Backend& active() {
    static const Backend* chosen = select();
    return *chosen;
}

}  // namespace ohe::kern
