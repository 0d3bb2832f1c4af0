// Copyright 2026 The akmeter Authors
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

#include "fft.hpp"

#include <mutex>
#include <new>

#include <fftw3.h>

namespace akmeter::detail {

namespace {

std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

FftBuffer::FftBuffer(std::size_t n)
    : data_(reinterpret_cast<std::complex<double> *>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data_ == nullptr) {
        throw std::bad_alloc();
    }
}

FftBuffer::~FftBuffer() { fftw_free(data_); }

FftPlan::FftPlan(std::size_t n, int sign) {
    FftBuffer probe(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex *>(probe.data()),
                             reinterpret_cast<fftw_complex *>(probe.data()), sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) {
        throw std::bad_alloc();
    }
}

FftPlan::~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void FftPlan::execute(FftBuffer &buffer) const {
    auto *data = reinterpret_cast<fftw_complex *>(buffer.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_), data, data);
}

}  // namespace akmeter::detail
