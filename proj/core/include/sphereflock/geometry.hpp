#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace sphereflock {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Below this value of ||z1 + z2|| two points are treated as antipodal.
inline constexpr double kAntipodalTolerance = 1e-8;
/// Below this value of ||z1 - z2|| two points are treated as coincident and
/// the transport operator is the identity.
inline constexpr double kCoincidenceTolerance = 1e-12;

/// A point on the unit sphere S^2.
class UnitVector {
 public:
  /// Throws OutOfRange unless | ||z|| - 1 | <= 1e-12.
  static UnitVector from(const Vec3& z);

  static UnitVector e1() { return UnitVector(Vec3::UnitX()); }
  static UnitVector e2() { return UnitVector(Vec3::UnitY()); }
  static UnitVector e3() { return UnitVector(Vec3::UnitZ()); }

  const Vec3& vec() const { return z_; }
  double operator[](int i) const { return z_[i]; }

 private:
  explicit UnitVector(const Vec3& z) : z_(z) {}
  friend UnitVector project_to_sphere(const Vec3& x);

  Vec3 z_;
};

/// A vector in the tangent plane of the sphere at `base`.
class TangentVector {
 public:
  /// Throws NotTangent unless |<v, base>| <= 1e-10.
  static TangentVector at(const UnitVector& base, const Vec3& v);

  const UnitVector& base() const { return base_; }
  const Vec3& vec() const { return v_; }
  double norm() const { return v_.norm(); }

 private:
  TangentVector(const UnitVector& base, const Vec3& v) : base_(base), v_(v) {}
  friend TangentVector project_to_tangent(const UnitVector& x, const Vec3& v);
  friend TangentVector transport(const UnitVector&, const UnitVector&,
                                 const Vec3&);

  UnitVector base_;
  Vec3 v_;
};

/// Orthogonal 3x3 matrix realizing parallel transport along a great circle.
class RotationMatrix {
 public:
  RotationMatrix() : m_(Mat3::Identity()) {}
  explicit RotationMatrix(const Mat3& m) : m_(m) {}

  const Mat3& matrix() const { return m_; }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  RotationMatrix transpose() const { return RotationMatrix(m_.transpose()); }
  double operator()(int r, int c) const { return m_(r, c); }

 private:
  Mat3 m_;
};

/// Parallel transport operator from `from` to `to` along the connecting great
/// circle:
///
///   R = c I + to from^T - from to^T + (1 - c) n n^T,
///   c = <from, to>,  n = (from x to) / |from x to|.
///
/// Returns the identity when ||from - to|| <= kCoincidenceTolerance and throws
/// AntipodalPair when ||from + to|| <= kAntipodalTolerance.
RotationMatrix rotation_matrix(const UnitVector& from, const UnitVector& to);

/// Same operator on raw directions. `from` and `to` must already be unit
/// length; no validation beyond the two tolerance cutoffs is performed. This
/// is the hot-path entry used by the dynamics.
Mat3 transport_matrix(const Vec3& from, const Vec3& to);

/// Transports `v` (tangent at `from`) to the tangent plane at `to`.
/// Throws NotTangent if |<v, from>| > 1e-8.
TangentVector transport(const UnitVector& from, const UnitVector& to,
                        const Vec3& v);

/// x / ||x||. Throws ZeroVector for x = 0.
UnitVector project_to_sphere(const Vec3& x);

/// v - <v, x> x.
TangentVector project_to_tangent(const UnitVector& x, const Vec3& v);

}  // namespace sphereflock
