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

#include "fpsprec/svd_util.hpp"

#include <stdexcept>

namespace fpsprec {

SvdFactors thin_svd(const arma::cx_mat& a) {
    SvdFactors f;
    if (!arma::svd_econ(f.u, f.sigma, f.v, a))
        throw std::runtime_error("SVD failed to converge");
    // Phase convention: rotate each (u_i, v_i) pair so the largest-magnitude
    // entry of u_i is real-positive. First index wins magnitude ties.
    for (arma::uword i = 0; i < f.u.n_cols; ++i) {
        arma::uword anchor = 0;
        double best = -1.0;
        for (arma::uword r = 0; r < f.u.n_rows; ++r) {
            const double m = std::abs(f.u(r, i));
            if (m > best) {
                best = m;
                anchor = r;
            }
        }
        if (best <= 0.0) continue;
        const std::complex<double> rot = std::conj(f.u(anchor, i)) / best;
        f.u.col(i) *= rot;
        if (i < f.v.n_cols) f.v.col(i) *= rot;
    }
    return f;
}

arma::cx_mat null_space(const arma::cx_mat& a) {
    return arma::null(a);
}

}  // namespace fpsprec
