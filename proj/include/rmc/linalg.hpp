// Copyright 2026 rmc authors.
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

#pragma once

#include <Eigen/Dense>

namespace rmc::linalg {

/// Thin (economy) SVD, A = U diag(s) V^H with s descending.
struct Svd {
  Eigen::MatrixXcd u;  ///< m x k, k = min(m, n)
  Eigen::VectorXd s;   ///< k
  Eigen::MatrixXcd v;  ///< n x k
};

Svd svd_econ(const Eigen::MatrixXcd& a);

/// Singular values only, descending.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a);

double spectral_norm(const Eigen::MatrixXcd& a);

double nuclear_norm(const Eigen::MatrixXcd& a);

/// Hermitian eigendecomposition, eigenvalues ascending. Only the lower
/// triangle of a is referenced.
struct Eigh {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  ///< column i pairs with values(i)
};

Eigh eigh(const Eigen::MatrixXcd& a);

}  // namespace rmc::linalg
