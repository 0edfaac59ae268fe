#include "pogdd/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace pogdd {

bool ScreenModel::valid(double tol) const {
  if (width_px <= 0 || height_px <= 0 || pitch_mm <= 0.0) return false;
  if (std::fabs(ex.norm() - 1.0) > tol) return false;
  if (std::fabs(ey.norm() - 1.0) > tol) return false;
  if (std::fabs(ex.dot(ey)) > tol) return false;
  Vec3 n = ex.cross(ey);
  if ((n - normal).norm() > tol) return false;
  return true;
}

RayHit intersect(const GazeRay& ray, const ScreenModel& screen) {
  Vec3 d = ray.direction.normalized();
  if (d.norm() == 0.0) return {RayStatus::ParallelRay, {}, 0.0};

  double denom = d.dot(screen.normal);
  if (std::fabs(denom) < 1e-12) return {RayStatus::ParallelRay, {}, 0.0};

  double t = (screen.s0_mm - ray.origin_mm).dot(screen.normal) / denom;
  if (t <= 0.0) return {RayStatus::BehindOrigin, {}, t};

  Vec3 p = ray.origin_mm + d * t;
  Vec3 rel = p - screen.s0_mm;
  PoG pog;
  pog.x_px = rel.dot(screen.ex) / screen.pitch_mm;
  pog.y_px = rel.dot(screen.ey) / screen.pitch_mm;
  pog.on_screen = pog.x_px >= 0.0 && pog.x_px < screen.width_px &&
                  pog.y_px >= 0.0 && pog.y_px < screen.height_px;
  return {RayStatus::Ok, pog, t};
}

ScreenModel fit_screen(int width_px, int height_px, double width_mm,
                       const Vec3& center_offset_mm, bool pixel_y_down) {
  if (width_px <= 0 || height_px <= 0 || width_mm <= 0.0)
    throw std::invalid_argument("fit_screen: dimensions must be positive");

  ScreenModel s;
  s.width_px = width_px;
  s.height_px = height_px;
  s.pitch_mm = width_mm / width_px;
  s.ex = {1.0, 0.0, 0.0};
  s.ey = pixel_y_down ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, -1.0, 0.0};
  s.normal = s.ex.cross(s.ey);
  double height_mm = height_px * s.pitch_mm;
  s.s0_mm = center_offset_mm - s.ex * (width_mm / 2.0) - s.ey * (height_mm / 2.0);
  return s;
}

}  // namespace pogdd
