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

#include "rmc/linalg.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace rmc::linalg {
namespace {

[[noreturn]] void fail(const char* routine, int info) {
  throw std::runtime_error(std::string("lapack: ") + routine +
                           " returned info=" + std::to_string(info));
}

lapack_complex_double* lp(Eigen::MatrixXcd& m) {
  return reinterpret_cast<lapack_complex_double*>(m.data());
}

}  // namespace

Svd svd_econ(const Eigen::MatrixXcd& a) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  Eigen::MatrixXcd work = a;
  Svd out;
  out.u.resize(m, k);
  out.s.resize(k);
  Eigen::MatrixXcd vt(k, n);
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, lp(work), m,
                            out.s.data(), lp(out.u), m, lp(vt), k);
  if (info != 0) {
    // The divide-and-conquer driver can fail to converge on rare inputs;
    // retry with the slower QR-based driver before giving up.
    work = a;
    Eigen::VectorXd superb(k > 1 ? k - 1 : 1);
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, lp(work), m,
                          out.s.data(), lp(out.u), m, lp(vt), k,
                          superb.data());
    if (info != 0) fail("zgesvd", info);
  }
  out.v = vt.adjoint();
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
  const auto m = static_cast<lapack_int>(a.rows());
  const auto n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  Eigen::MatrixXcd work = a;
  Eigen::VectorXd s(k);
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, lp(work), m,
                            s.data(), nullptr, m, nullptr, k);
  if (info != 0) {
    work = a;
    Eigen::VectorXd superb(k > 1 ? k - 1 : 1);
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n, lp(work), m,
                          s.data(), nullptr, m, nullptr, k, superb.data());
    if (info != 0) fail("zgesvd", info);
  }
  return s;
}

double spectral_norm(const Eigen::MatrixXcd& a) {
  return singular_values(a)(0);
}

double nuclear_norm(const Eigen::MatrixXcd& a) {
  return singular_values(a).sum();
}

Eigh eigh(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) {
    throw std::runtime_error("eigh: matrix must be square");
  }
  const auto n = static_cast<lapack_int>(a.rows());
  Eigh out;
  out.vectors = a;
  out.values.resize(n);
  const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                  lp(out.vectors), n, out.values.data());
  if (info != 0) fail("zheevd", info);
  return out;
}

}  // namespace rmc::linalg
