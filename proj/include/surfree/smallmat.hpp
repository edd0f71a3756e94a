#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace surfree {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3 scaled(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }

struct Mat3 {
  std::array<double, 9> a{};  // row-major

  static Mat3 identity() {
    Mat3 m;
    m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }
  double at(int r, int c) const { return a[static_cast<std::size_t>(3 * r + c)]; }
  double& at(int r, int c) { return a[static_cast<std::size_t>(3 * r + c)]; }

  Mat3 operator*(const Mat3& o) const {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        m.at(r, c) = at(r, 0) * o.at(0, c) + at(r, 1) * o.at(1, c) + at(r, 2) * o.at(2, c);
    return m;
  }
  Mat3 transposed() const {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m.at(r, c) = at(c, r);
    return m;
  }
  double det() const {
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  }
  double trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }
};

double frob_dist(const Mat3& a, const Mat3& b);
double frob_dist_identity(const Mat3& m);
double orthogonality_defect(const Mat3& m);  // ‖MᵀM − I‖_F

// Gram–Schmidt on rows, third row from the cross product (det +1).
Mat3 orthonormalized(const Mat3& m);

// Rotation angle in [0, π], computed as atan2(‖skew part‖, (tr−1)/2) so it
// stays accurate near the identity.
double rotation_angle(const Mat3& m);

struct AxisAngle {
  Vec3 axis;
  double angle;
};
// Axis extraction via the quaternion; nullopt when the rotation is too close
// to the identity for the axis to be meaningful.
std::optional<AxisAngle> axis_angle(const Mat3& m);

Mat3 rotation_about(const Vec3& unit_axis, double angle);

struct Quat {
  double w = 1, x = 0, y = 0, z = 0;
};
Quat qmul(const Quat& a, const Quat& b);
Quat qnormalized(const Quat& q);
Quat quat_from_mat3(const Mat3& m);
Mat3 mat3_from_quat(const Quat& q);

struct Mat2 {
  std::array<double, 4> a{};  // row-major [m00, m01, m10, m11]

  static Mat2 identity() {
    Mat2 m;
    m.a = {1, 0, 0, 1};
    return m;
  }
  Mat2 operator*(const Mat2& o) const {
    Mat2 m;
    m.a = {a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
           a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]};
    return m;
  }
  double det() const { return a[0] * a[3] - a[1] * a[2]; }
  double trace() const { return a[0] + a[3]; }
  Mat2 inverse_unimodular() const {  // adjugate; exact for det 1
    Mat2 m;
    m.a = {a[3], -a[1], -a[2], a[0]};
    return m;
  }
};

double frob_dist(const Mat2& a, const Mat2& b);
double frob_dist_identity(const Mat2& m);
double frob_norm(const Mat2& m);

Mat2 sl2_normalized(const Mat2& m);  // scale to det 1; requires det > 0

// exp of a traceless 2x2 matrix, closed form via X² = (p²+qr)·I.
Mat2 sl2_exp(const Mat2& traceless);

// Principal logarithm; defined exactly when trace > -2.
std::optional<Mat2> sl2_log(const Mat2& m);

}  // namespace surfree
