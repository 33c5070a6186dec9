#include "sphereflock/geometry.hpp"

#include <cmath>
#include <string>

#include "sphereflock/errors.hpp"

namespace sphereflock {

UnitVector UnitVector::from(const Vec3& z) {
  const double norm = z.norm();
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    throw OutOfRange("UnitVector: norm " + std::to_string(norm) +
                     " is not 1");
  }
  return UnitVector(z);
}

TangentVector TangentVector::at(const UnitVector& base, const Vec3& v) {
  const double normal = v.dot(base.vec());
  if (!(std::abs(normal) <= 1e-10)) {
    throw NotTangent("TangentVector: normal component " +
                     std::to_string(normal));
  }
  return TangentVector(base, v);
}

Mat3 transport_matrix(const Vec3& from, const Vec3& to) {
  const Vec3 diff = from - to;
  const double gap = diff.norm();
  if (gap <= kCoincidenceTolerance) return Mat3::Identity();
  if ((from + to).norm() <= kAntipodalTolerance) {
    throw AntipodalPair("transport between antipodal points");
  }

  const double c = from.dot(to);
  // 1 - <from, to> for unit vectors, without the cancellation near c = 1.
  const double one_minus_c = 0.5 * gap * gap;
  Vec3 n = from.cross(to);
  n /= n.norm();

  Mat3 r = c * Mat3::Identity();
  r.noalias() += to * from.transpose();
  r.noalias() -= from * to.transpose();
  r.noalias() += one_minus_c * (n * n.transpose());
  return r;
}

RotationMatrix rotation_matrix(const UnitVector& from, const UnitVector& to) {
  return RotationMatrix(transport_matrix(from.vec(), to.vec()));
}

TangentVector transport(const UnitVector& from, const UnitVector& to,
                        const Vec3& v) {
  const double normal = v.dot(from.vec());
  if (!(std::abs(normal) <= 1e-8)) {
    throw NotTangent("transport: input has normal component " +
                     std::to_string(normal));
  }
  return TangentVector(to, transport_matrix(from.vec(), to.vec()) * v);
}

UnitVector project_to_sphere(const Vec3& x) {
  const double norm = x.norm();
  if (norm == 0.0) throw ZeroVector("cannot project the zero vector");
  return UnitVector(x / norm);
}

TangentVector project_to_tangent(const UnitVector& x, const Vec3& v) {
  return TangentVector(x, v - v.dot(x.vec()) * x.vec());
}

}  // namespace sphereflock
