// Copyright 2026 The QCCD Toolkit Authors
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

#ifndef QCCD_ZZ_WRAPPER_HPP
#define QCCD_ZZ_WRAPPER_HPP

#include <array>
#include <functional>
#include <vector>

#include "qccd/linalg.hpp"

namespace qccd {

/** Axis of the bichromatic MS drive as a function of the laser phase. */
enum class MsAxisConvention {
  /** X sin(phi) + Y cos(phi). */
  SIN_COS,
  /** X cos(phi) + Y sin(phi). */
  COS_SIN,
};

struct ZZWrapperParams {
  double pre_axis_offset = 0;
  double post_axis_offset = 0;
  double pre_angle = 0;
  double post_angle = 0;
};

struct WrapperSearchResult {
  ZZWrapperParams params;
  /** Worst-case phase-invariant distance to U_zz over the phi grid. */
  double residual = 0;
  bool converged = false;
  MsAxisConvention convention = MsAxisConvention::SIN_COS;
};

inline constexpr double kWrapperTolerance = 1e-9;
inline constexpr int kWrapperGridPoints = 64;

Mat4 ms_unitary(double phi, MsAxisConvention conv);

/** W2(phi) U_MS(phi) W1(phi) with W_k = (exp(-i t_k/2 (X cos(phi+d_k) + Y sin(phi+d_k))))^{(x)2}. */
Mat4 wrapped_ms(const ZZWrapperParams &p, double phi, MsAxisConvention conv);

/** max over phi = 2 pi k / grid of the phase-invariant distance to U_zz. */
double wrapper_worst_case(const ZZWrapperParams &p, MsAxisConvention conv, int grid = kWrapperGridPoints);

/** Grid + Nelder-Mead over (d1, d2, t1, t2); never throws, reports residual. */
WrapperSearchResult search_zz_wrapper(MsAxisConvention conv = MsAxisConvention::SIN_COS);

/**
 * How the machine realizes U_zz: the wrapped MS composite when the search
 * converges, otherwise the native U_zz primitive with the search residual
 * recorded. Searched once per process.
 */
struct ZZGateSource {
  bool native_fallback = true;
  WrapperSearchResult search;
};

const ZZGateSource &resolve_zz_gate(MsAxisConvention conv = MsAxisConvention::SIN_COS);

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0;
  int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> x0,
                             double step, double ftol, int max_iter);

}  // namespace qccd

#endif
