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

#ifndef FPSPREC_SVD_UTIL_HPP
#define FPSPREC_SVD_UTIL_HPP

#include <armadillo>

namespace fpsprec {

/// Economy-size SVD factors with a fixed phase convention: each column of u
/// has its largest-magnitude entry rotated to be real-positive, with v
/// co-rotated so u * diag(sigma) * v^H is unchanged. Keeps singular-vector
/// phases stable across LAPACK builds.
struct SvdFactors {
    arma::cx_mat u;
    arma::vec sigma;   // non-increasing
    arma::cx_mat v;

    arma::cx_mat reconstruct() const { return u * arma::diagmat(sigma) * v.t(); }
};

SvdFactors thin_svd(const arma::cx_mat& a);

/// Orthonormal basis of the null space of `a` (columns).
arma::cx_mat null_space(const arma::cx_mat& a);

}  // namespace fpsprec

#endif  // FPSPREC_SVD_UTIL_HPP
