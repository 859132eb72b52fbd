// SPDX-License-Identifier: Apache-2.0
//
// fpsprec: hybrid precoding for mm-wave MIMO with fixed phase shifters
// Copyright (C) 2026 the fpsprec authors
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

#ifndef FPSPREC_RNG_HPP
#define FPSPREC_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fpsprec {

/// Seeded random source with hand-rolled transforms. std:: distributions are
/// implementation-defined; these samplers produce the same stream on every
/// platform, which is what the reproducibility contract requires.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 usable bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; consumes two uniforms.
    double normal() {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly symmetric complex Gaussian with unit variance.
    std::complex<double> normal_cx() {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-std::log(u1));  // folds in the 1/sqrt(2) split
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    /// Zero-mean Laplacian with standard deviation `stddev`.
    double laplace(double stddev) {
        const double b = stddev / std::sqrt(2.0);
        const double u = uniform01() - 0.5;
        const double mag = -b * std::log(1.0 - 2.0 * std::abs(u));
        return u < 0.0 ? -mag : mag;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace fpsprec

#endif  // FPSPREC_RNG_HPP
