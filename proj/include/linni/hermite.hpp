#pragma once

namespace linni::detail {

// Quintic Hermite basis on t in [0,1]; returns value, first and second
// derivative (with respect to r) of the interpolant.
struct Hermite5 {
  double v, d1, d2;
};

inline Hermite5 hermite5(double h, double t, double y0, double dy0, double ddy0, double y1, double dy1,
                  double ddy1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  const double h01 = 10 * t3 - 15 * t4 + 6 * t5;
  const double h11 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h21 = 0.5 * t3 - t4 + 0.5 * t5;

  const double d00 = -30 * t2 + 60 * t3 - 30 * t4;
  const double d10 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  const double d20 = t - 4.5 * t2 + 6 * t3 - 2.5 * t4;
  const double d01 = 30 * t2 - 60 * t3 + 30 * t4;
  const double d11 = -12 * t2 + 28 * t3 - 15 * t4;
  const double d21 = 1.5 * t2 - 4 * t3 + 2.5 * t4;

  const double s00 = -60 * t + 180 * t2 - 120 * t3;
  const double s10 = -36 * t + 96 * t2 - 60 * t3;
  const double s20 = 1 - 9 * t + 18 * t2 - 10 * t3;
  const double s01 = 60 * t - 180 * t2 + 120 * t3;
  const double s11 = -24 * t + 84 * t2 - 60 * t3;
  const double s21 = 3 * t - 12 * t2 + 10 * t3;

  const double hh = h * h;
  Hermite5 out;
  out.v = h00 * y0 + h * h10 * dy0 + hh * h20 * ddy0 + h01 * y1 + h * h11 * dy1 + hh * h21 * ddy1;
  out.d1 = (d00 * y0 + h * d10 * dy0 + hh * d20 * ddy0 + d01 * y1 + h * d11 * dy1 +
            hh * d21 * ddy1) / h;
  out.d2 = (s00 * y0 + h * s10 * dy0 + hh * s20 * ddy0 + s01 * y1 + h * s11 * dy1 +
            hh * s21 * ddy1) / hh;
  return out;
}

} // namespace linni::detail
