#pragma once

#include "pogdd/vec.hpp"

namespace pogdd {

// On-screen gaze point in pixel coordinates (origin top-left, x right,
// y down). Off-screen points keep their unclamped coordinates.
struct PoG {
  double x_px = 0.0;
  double y_px = 0.0;
  bool on_screen = false;
};

// Calibrated screen plane in camera coordinates. The plane is parameterized
// by its top-left corner plus an orthonormal pixel basis so that the 3D->2D
// mapping needs no further calibration data.
struct ScreenModel {
  Vec3 s0_mm;         // top-left corner, millimeters
  Vec3 ex;            // unit vector along +pixel-x
  Vec3 ey;            // unit vector along +pixel-y
  Vec3 normal;        // ex x ey
  int width_px = 0;
  int height_px = 0;
  double pitch_mm = 0.0;  // millimeters per pixel, both axes

  bool valid(double tol = 1e-9) const;

  // 3D point of a pixel coordinate (u, v).
  Vec3 pixel_to_point(double u, double v) const {
    return s0_mm + ex * (u * pitch_mm) + ey * (v * pitch_mm);
  }
};

struct GazeRay {
  Vec3 origin_mm;
  Vec3 direction;  // need not be normalized
};

enum class RayStatus { Ok, ParallelRay, BehindOrigin };

struct RayHit {
  RayStatus status = RayStatus::Ok;
  PoG pog;
  double t_mm = 0.0;  // distance along the unit direction, valid when Ok
};

// Ray-plane intersection, reported in pixels. Rays parallel to the screen or
// pointing away from it do not produce a PoG.
RayHit intersect(const GazeRay& ray, const ScreenModel& screen);

// Builds a screen model from physical dimensions. The screen is centered at
// center_offset_mm, faces are axis-aligned with the camera frame, and ey
// points along camera +y when pixel_y_down (camera convention: y down).
ScreenModel fit_screen(int width_px, int height_px, double width_mm,
                       const Vec3& center_offset_mm, bool pixel_y_down = true);

}  // namespace pogdd
