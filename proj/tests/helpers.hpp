// Copyright 2026 The qoracle authors
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

#include <catch2/catch_amalgamated.hpp>

#include "qoracle/linalg.hpp"

namespace qoracle::test {

inline double max_diff(const CMatrix& a, const CMatrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    return max_abs(a - b);
}

inline double max_diff(const CVector& a, const CVector& b) {
    REQUIRE(a.size() == b.size());
    return (a - b).cwiseAbs().maxCoeff();
}

inline CVector basis_state(Eigen::Index dim, Eigen::Index j) {
    CVector v = CVector::Zero(dim);
    v(j) = 1.0;
    return v;
}

}  // namespace qoracle::test
