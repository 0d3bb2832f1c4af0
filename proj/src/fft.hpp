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

#pragma once

#include <complex>
#include <cstddef>

namespace akmeter::detail {

/// fftw_malloc'd buffer; every instance has the same alignment, so one plan can be
/// executed on any of them.
class FftBuffer {
  public:
    explicit FftBuffer(std::size_t n);
    ~FftBuffer();
    FftBuffer(const FftBuffer &) = delete;
    FftBuffer &operator=(const FftBuffer &) = delete;

    std::complex<double> *data() { return data_; }
    std::complex<double> &operator[](std::size_t i) { return data_[i]; }

  private:
    std::complex<double> *data_;
};

/// In-place unnormalized 1-D DFT, sign -1 (forward) or +1 (backward).
/// Construction and destruction serialize on a global lock; execute() is thread-safe.
class FftPlan {
  public:
    FftPlan(std::size_t n, int sign);
    ~FftPlan();
    FftPlan(const FftPlan &) = delete;
    FftPlan &operator=(const FftPlan &) = delete;

    void execute(FftBuffer &buffer) const;

  private:
    void *plan_;
};

}  // namespace akmeter::detail
