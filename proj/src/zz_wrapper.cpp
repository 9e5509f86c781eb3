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

#include "qccd/zz_wrapper.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace qccd {

Mat4 ms_unitary(double phi, MsAxisConvention conv) {
  Mat2 axis = conv == MsAxisConvention::SIN_COS ? Mat2(std::sin(phi) * pauli_x() + std::cos(phi) * pauli_y())
                                                : Mat2(std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y());
  // (axis (x) axis)^2 = I, so exp(-i t A) = cos t - i sin t A.
  Mat4 a = kron(axis, axis);
  double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  return c * Mat4::Identity() - cplx(0, s) * a;
}

Mat4 wrapped_ms(const ZZWrapperParams &p, double phi, MsAxisConvention conv) {
  Mat2 w1 = rxy(p.pre_angle, phi + p.pre_axis_offset);
  Mat2 w2 = rxy(p.post_angle, phi + p.post_axis_offset);
  return kron(w2, w2) * ms_unitary(phi, conv) * kron(w1, w1);
}

double wrapper_worst_case(const ZZWrapperParams &p, MsAxisConvention conv, int grid) {
  static const Mat4 target = uzz();
  double worst = 0;
  for (int k = 0; k < grid; k++) {
    double phi = 2 * kPi * k / grid;
    worst = std::max(worst, phase_distance(wrapped_ms(p, phi, conv), target));
  }
  return worst;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &f, std::vector<double> x0,
                             double step, double ftol, int max_iter) {
  std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; i++) {
    pts[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= n; i++) {
    fv[i] = f(pts[i]);
  }
  std::vector<std::size_t> idx(n + 1);
  int it = 0;
  for (; it < max_iter; it++) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];
    if (std::abs(fv[worst] - fv[best]) <= ftol * (std::abs(fv[best]) + 1e-300) || fv[best] == 0) {
      break;
    }
    std::vector<double> cen(n, 0.0);
    for (std::size_t i = 0; i <= n; i++) {
      if (i == worst) {
        continue;
      }
      for (std::size_t d = 0; d < n; d++) {
        cen[d] += pts[i][d] / static_cast<double>(n);
      }
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; d++) {
        x[d] = cen[d] + t * (pts[worst][d] - cen[d]);
      }
      return x;
    };
    std::vector<double> xr = along(-1.0);
    double fr = f(xr);
    if (fr < fv[best]) {
      std::vector<double> xe = along(-2.0);
      double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      pts[worst] = xr;
      fv[worst] = fr;
    } else {
      std::vector<double> xc = fr < fv[worst] ? along(-0.5) : along(0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fv[worst])) {
        pts[worst] = xc;
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; i++) {
          if (i == best) {
            continue;
          }
          for (std::size_t d = 0; d < n; d++) {
            pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
          }
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  std::size_t b = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {pts[b], fv[b], it};
}

namespace {

ZZWrapperParams from_vec(const std::vector<double> &v) { return {v[0], v[1], v[2], v[3]}; }

/** Sum over the grid of squared phase-aligned Frobenius distances. */
double smooth_cost(const ZZWrapperParams &p, MsAxisConvention conv, int grid) {
  static const Mat4 target = uzz();
  double s = 0;
  for (int k = 0; k < grid; k++) {
    double phi = 2 * kPi * k / grid;
    Mat4 u = wrapped_ms(p, phi, conv);
    cplx ov = (target.adjoint() * u).trace();
    cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1, 0);
    s += (u - ph * target).squaredNorm();
  }
  return s;
}

double wrap_positive(double x) {
  double t = std::fmod(x, 2 * kPi);
  return t < 0 ? t + 2 * kPi : t;
}

}  // namespace

WrapperSearchResult search_zz_wrapper(MsAxisConvention conv) {
  constexpr int kGrid = 8;
  constexpr int kCoarsePhi = 8;
  std::vector<std::pair<double, std::vector<double>>> seeds;
  for (int a = 0; a < kGrid; a++) {
    for (int b = 0; b < kGrid; b++) {
      for (int c = 0; c < kGrid; c++) {
        for (int d = 0; d < kGrid; d++) {
          std::vector<double> x = {2 * kPi * a / kGrid, 2 * kPi * b / kGrid, 2 * kPi * c / kGrid,
                                   2 * kPi * d / kGrid};
          seeds.emplace_back(smooth_cost(from_vec(x), conv, kCoarsePhi), x);
        }
      }
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const auto &l, const auto &r) { return l.first < r.first; });

  auto smooth = [&](const std::vector<double> &x) { return smooth_cost(from_vec(x), conv, kWrapperGridPoints); };
  auto worst = [&](const std::vector<double> &x) { return wrapper_worst_case(from_vec(x), conv); };

  WrapperSearchResult best;
  best.convention = conv;
  best.residual = INFINITY;
  constexpr std::size_t kStarts = 6;
  for (std::size_t s = 0; s < std::min(kStarts, seeds.size()); s++) {
    NelderMeadResult r = nelder_mead(smooth, seeds[s].second, 0.3, 1e-15, 4000);
    for (int restart = 0; restart < 3; restart++) {
      r = nelder_mead(smooth, r.x, 1e-3, 1e-15, 4000);
    }
    if (r.f > 1e-12) {
      r = nelder_mead(worst, r.x, 0.05, 1e-12, 3000);
    }
    std::vector<double> x = r.x;
    for (auto &v : x) {
      v = wrap_positive(v);
    }
    double res = worst(x);
    if (res < best.residual) {
      best.residual = res;
      best.params = from_vec(x);
    }
    if (best.residual < kWrapperTolerance) {
      break;
    }
  }
  best.converged = best.residual < kWrapperTolerance;
  return best;
}

const ZZGateSource &resolve_zz_gate(MsAxisConvention conv) {
  static std::once_flag flags[2];
  static ZZGateSource sources[2];
  int k = static_cast<int>(conv);
  std::call_once(flags[k], [&] {
    sources[k].search = search_zz_wrapper(conv);
    sources[k].native_fallback = !sources[k].search.converged;
  });
  return sources[k];
}

}  // namespace qccd
