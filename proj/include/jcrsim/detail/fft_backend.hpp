// SPDX-License-Identifier: Apache-2.0
//
// jcrsim - joint chirp-radar/communication simulator
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

#ifndef JCRSIM_DETAIL_FFT_BACKEND_HPP
#define JCRSIM_DETAIL_FFT_BACKEND_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace jcrsim::detail {

// Process-wide cache of FFTW plans keyed by (length, direction).  Plan
// creation is the only FFTW entry point that is not thread-safe, so it is
// serialized behind a mutex; execution on distinct buffers is safe without
// locking.  Plans are created with FFTW_UNALIGNED so they can execute on
// ordinary std::vector storage.
class FftPlanCache {
  public:
    static FftPlanCache &instance()
    {
        static FftPlanCache cache;
        return cache;
    }

    // Out-of-place complex transform, unnormalized (FFTW convention).
    void transform(const std::complex<double> *in, std::complex<double> *out, std::size_t n, int sign)
    {
        if (n == 0)
            throw std::invalid_argument("fft: empty input");

        fftw_plan plan = nullptr;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_pair(n, sign);
            auto it = plans_.find(key);
            if (it == plans_.end())
            {
                std::vector<std::complex<double>> a(n), b(n);
                plan = fftw_plan_dft_1d(static_cast<int>(n),
                                        reinterpret_cast<fftw_complex *>(a.data()),
                                        reinterpret_cast<fftw_complex *>(b.data()),
                                        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (plan == nullptr)
                    throw std::runtime_error("fft: plan creation failed");
                plans_.emplace(key, plan);
            }
            else
                plan = it->second;
        }

        // const_cast is safe: FFTW does not modify the input of an
        // out-of-place plan.
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex *>(const_cast<std::complex<double> *>(in)),
                         reinterpret_cast<fftw_complex *>(out));
    }

    FftPlanCache(const FftPlanCache &) = delete;
    FftPlanCache &operator=(const FftPlanCache &) = delete;

  private:
    FftPlanCache() = default;
    ~FftPlanCache()
    {
        for (auto &kv : plans_)
            fftw_destroy_plan(kv.second);
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void fft_raw(const std::complex<double> *in, std::complex<double> *out, std::size_t n, bool forward)
{
    FftPlanCache::instance().transform(in, out, n, forward ? FFTW_FORWARD : FFTW_BACKWARD);
}

} // namespace jcrsim::detail

#endif
