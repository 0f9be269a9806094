/*
   Copyright 2026 The mmwi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <cstdlib>
#include <cstring>

#include "mmwi/simd.hpp"

namespace mmwi::simd {

#if !defined(MMWI_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#if !defined(MMWI_HAVE_NEON)
const KernelTable* neon_kernels() { return nullptr; }
#endif

const KernelTable& kernels() {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("MMWI_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
        if (const KernelTable* t = avx2_kernels()) return t;
        if (const KernelTable* t = neon_kernels()) return t;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace mmwi::simd
