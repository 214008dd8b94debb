// Copyright (c) 2026 The fbnorm Authors.
// SPDX-License-Identifier: MIT

// Rational-approximation complementary error function (Cody's three-region
// scheme: |x| <= 0.46875, 0.46875 < |x| <= 4, |x| > 4), accurate to about
// 1.5e-15 relative on the real line.

#include "fbnorm/euler_quad.hpp"

#include <cmath>

namespace fbnorm {

namespace {

const double kA[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                      3.77485237685302021e2, 3.20937758913846947e3,
                      1.85777706184603153e-1};
const double kB[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                      1.28261652607737228e3, 2.84423683343917062e3};
const double kC[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                      6.61191906371416295e1,  2.98635138197400131e2,
                      8.81952221241769090e2,  1.71204761263407058e3,
                      2.05107837782607147e3,  1.23033935479799725e3,
                      2.15311535474403846e-8};
const double kD[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                      5.37181101862009858e2, 1.62138957456669019e3,
                      3.29079923573345963e3, 4.36261909014324716e3,
                      3.43936767414372164e3, 1.23033935480374942e3};
const double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                      1.25781726111229246e-1, 1.60837851487422766e-2,
                      6.58749161529837803e-4, 1.63153871373020978e-2};
const double kQ[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                      5.27905102951428412e-1, 6.05183413124413191e-2,
                      2.33520497626869185e-3};

const double kInvSqrtPi = 0.56418958354775628694807945156077;

}  // namespace

double erfc(double x) {
  double ax = std::fabs(x);
  if (ax <= 0.46875) {
    double y = x * x;
    double num = ((((kA[4] * y + kA[0]) * y + kA[1]) * y + kA[2]) * y + kA[3]);
    double den = ((((y + kB[0]) * y + kB[1]) * y + kB[2]) * y + kB[3]);
    return 1.0 - x * num / den;
  }
  double r;
  if (ax <= 4.0) {
    double num = kC[8];
    for (int i = 0; i < 8; ++i) num = num * ax + kC[i];
    double den = 1.0;
    for (int i = 0; i < 8; ++i) den = den * ax + kD[i];
    r = std::exp(-ax * ax) * num / den;
  } else {
    double y = 1.0 / (ax * ax);
    double num = kP[5];
    for (int i = 0; i < 5; ++i) num = num * y + kP[i];
    double den = 1.0;
    for (int i = 0; i < 5; ++i) den = den * y + kQ[i];
    r = y * num / den;
    r = std::exp(-ax * ax) * (kInvSqrtPi - r) / ax;
  }
  return x < 0.0 ? 2.0 - r : r;
}

}  // namespace fbnorm
