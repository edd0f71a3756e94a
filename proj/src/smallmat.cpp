#include "surfree/smallmat.hpp"

#include <algorithm>

namespace surfree {

double frob_dist(const Mat3& a, const Mat3& b) {
  double s = 0;
  for (int i = 0; i < 9; ++i) {
    double d = a.a[static_cast<std::size_t>(i)] - b.a[static_cast<std::size_t>(i)];
    s += d * d;
  }
  return std::sqrt(s);
}

double frob_dist_identity(const Mat3& m) { return frob_dist(m, Mat3::identity()); }

double orthogonality_defect(const Mat3& m) {
  return frob_dist(m.transposed() * m, Mat3::identity());
}

Mat3 orthonormalized(const Mat3& m) {
  Vec3 r0{m.at(0, 0), m.at(0, 1), m.at(0, 2)};
  Vec3 r1{m.at(1, 0), m.at(1, 1), m.at(1, 2)};
  r0 = scaled(r0, 1.0 / norm(r0));
  double p = dot(r1, r0);
  r1 = {r1.x - p * r0.x, r1.y - p * r0.y, r1.z - p * r0.z};
  r1 = scaled(r1, 1.0 / norm(r1));
  Vec3 r2 = cross(r0, r1);
  Mat3 out;
  out.a = {r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z};
  return out;
}

double rotation_angle(const Mat3& m) {
  const double vx = 0.5 * (m.at(2, 1) - m.at(1, 2));
  const double vy = 0.5 * (m.at(0, 2) - m.at(2, 0));
  const double vz = 0.5 * (m.at(1, 0) - m.at(0, 1));
  const double s = std::sqrt(vx * vx + vy * vy + vz * vz);
  const double c = 0.5 * (m.trace() - 1.0);
  return std::atan2(s, c);
}

Quat qmul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat qnormalized(const Quat& q) {
  double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Quat quat_from_mat3(const Mat3& m) {
  // Shepperd's branch method: pick the largest of w,x,y,z to avoid cancellation.
  const double t = m.trace();
  Quat q;
  if (t > 0) {
    double s = std::sqrt(t + 1.0) * 2;
    q.w = 0.25 * s;
    q.x = (m.at(2, 1) - m.at(1, 2)) / s;
    q.y = (m.at(0, 2) - m.at(2, 0)) / s;
    q.z = (m.at(1, 0) - m.at(0, 1)) / s;
  } else if (m.at(0, 0) > m.at(1, 1) && m.at(0, 0) > m.at(2, 2)) {
    double s = std::sqrt(1.0 + m.at(0, 0) - m.at(1, 1) - m.at(2, 2)) * 2;
    q.w = (m.at(2, 1) - m.at(1, 2)) / s;
    q.x = 0.25 * s;
    q.y = (m.at(0, 1) + m.at(1, 0)) / s;
    q.z = (m.at(0, 2) + m.at(2, 0)) / s;
  } else if (m.at(1, 1) > m.at(2, 2)) {
    double s = std::sqrt(1.0 + m.at(1, 1) - m.at(0, 0) - m.at(2, 2)) * 2;
    q.w = (m.at(0, 2) - m.at(2, 0)) / s;
    q.x = (m.at(0, 1) + m.at(1, 0)) / s;
    q.y = 0.25 * s;
    q.z = (m.at(1, 2) + m.at(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + m.at(2, 2) - m.at(0, 0) - m.at(1, 1)) * 2;
    q.w = (m.at(1, 0) - m.at(0, 1)) / s;
    q.x = (m.at(0, 2) + m.at(2, 0)) / s;
    q.y = (m.at(1, 2) + m.at(2, 1)) / s;
    q.z = 0.25 * s;
  }
  return qnormalized(q);
}

Mat3 mat3_from_quat(const Quat& qq) {
  Quat q = qnormalized(qq);
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 m;
  m.a = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
         2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
  return m;
}

std::optional<AxisAngle> axis_angle(const Mat3& m) {
  Quat q = quat_from_mat3(m);
  if (q.w < 0) q = {-q.w, -q.x, -q.y, -q.z};
  const double s = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (s < 1e-9) return std::nullopt;
  return AxisAngle{{q.x / s, q.y / s, q.z / s}, 2.0 * std::atan2(s, q.w)};
}

Mat3 rotation_about(const Vec3& u, double angle) {
  const double c = std::cos(angle), s = std::sin(angle), k = 1.0 - c;
  Mat3 m;
  m.a = {c + u.x * u.x * k,         u.x * u.y * k - u.z * s, u.x * u.z * k + u.y * s,
         u.y * u.x * k + u.z * s,   c + u.y * u.y * k,       u.y * u.z * k - u.x * s,
         u.z * u.x * k - u.y * s,   u.z * u.y * k + u.x * s, c + u.z * u.z * k};
  return m;
}

double frob_dist(const Mat2& a, const Mat2& b) {
  double s = 0;
  for (int i = 0; i < 4; ++i) {
    double d = a.a[static_cast<std::size_t>(i)] - b.a[static_cast<std::size_t>(i)];
    s += d * d;
  }
  return std::sqrt(s);
}

double frob_dist_identity(const Mat2& m) { return frob_dist(m, Mat2::identity()); }

double frob_norm(const Mat2& m) {
  return std::sqrt(m.a[0] * m.a[0] + m.a[1] * m.a[1] + m.a[2] * m.a[2] + m.a[3] * m.a[3]);
}

Mat2 sl2_normalized(const Mat2& m) {
  const double d = m.det();
  const double s = 1.0 / std::sqrt(d);
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.a[static_cast<std::size_t>(i)] = m.a[static_cast<std::size_t>(i)] * s;
  return out;
}

Mat2 sl2_exp(const Mat2& x) {
  // X = [[p,q],[r,-p]] has X² = (p² + qr)·I.
  const double delta = x.a[0] * x.a[0] + x.a[1] * x.a[2];
  double c, s;
  if (delta > 1e-12) {
    const double mu = std::sqrt(delta);
    c = std::cosh(mu);
    s = std::sinh(mu) / mu;
  } else if (delta < -1e-12) {
    const double om = std::sqrt(-delta);
    c = std::cos(om);
    s = std::sin(om) / om;
  } else {
    c = 1.0 + delta / 2.0;
    s = 1.0 + delta / 6.0;
  }
  Mat2 out;
  out.a = {c + s * x.a[0], s * x.a[1], s * x.a[2], c - s * x.a[0]};
  return out;
}

std::optional<Mat2> sl2_log(const Mat2& m) {
  const double tau = 0.5 * m.trace();
  if (tau <= -1.0) return std::nullopt;
  double scale;
  if (tau > 1.0 + 1e-12) {
    const double mu = std::acosh(tau);
    scale = mu / std::sinh(mu);
  } else if (tau < 1.0 - 1e-12) {
    const double om = std::acos(tau);
    scale = om / std::sin(om);
  } else {
    scale = 1.0 - (tau - 1.0) / 3.0;
  }
  Mat2 out;
  out.a = {(m.a[0] - tau) * scale, m.a[1] * scale, m.a[2] * scale, (m.a[3] - tau) * scale};
  return out;
}

}  // namespace surfree
