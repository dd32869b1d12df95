// Copyright 2026 The Qihyp Authors.
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

#ifndef QIHYP_HYP2_HPP
#define QIHYP_HYP2_HPP

#include <functional>
#include <optional>

#include "qihyp/errors.hpp"

namespace qihyp::hyp2 {

/// A point of the upper half-plane model: y > 0 strictly.
struct HPoint {
  double x = 0.0;
  double y = 1.0;

  HPoint() = default;
  HPoint(double x_, double y_);
};

/// An element of PSL(2,R) stored as its unit-determinant lift with a fixed
/// sign convention: the first nonzero entry in the order (a, b, c, d) is
/// nonnegative. Construction normalizes the determinant to 1 (the input must
/// have positive determinant) and canonicalizes the sign, so value equality
/// of entries is meaningful.
class MoebiusElement {
 public:
  /// Identity.
  MoebiusElement();

  /// From matrix entries [[a, b], [c, d]]. Throws ValidationError unless
  /// ad - bc > 0.
  MoebiusElement(double a, double b, double c, double d);

  /// Rotation by `angle` radians about an interior point.
  static MoebiusElement rotation(const HPoint& center, double angle);

  /// Translation by hyperbolic length `length` along the geodesic from 0 to
  /// infinity, i.e. diag(e^{length/2}, e^{-length/2}).
  static MoebiusElement axis_translation(double length);

  /// The parabolic x -> x + shift, i.e. [[1, shift], [0, 1]].
  static MoebiusElement horizontal_translation(double shift);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  /// Trace of the canonical lift.
  double trace() const { return a_ + d_; }

  MoebiusElement inverse() const;
  MoebiusElement operator*(const MoebiusElement& rhs) const;

  /// True when the two elements agree as PSL(2,R) elements within `tol`
  /// (max entry difference, minimized over the two lifts of rhs).
  bool approx_equal(const MoebiusElement& rhs, double tol) const;

 private:
  double a_, b_, c_, d_;
};

/// A point of the circle at infinity: a real number or the point at infinity.
class BoundaryPoint {
 public:
  static BoundaryPoint infinity();
  static BoundaryPoint at(double value);

  bool is_infinity() const { return infinite_; }

  /// Finite value; throws ValidationError for the point at infinity.
  double value() const;

  bool operator==(const BoundaryPoint& rhs) const;

 private:
  BoundaryPoint(bool infinite, double value) : infinite_(infinite), value_(value) {}
  bool infinite_;
  double value_;
};

/// An ordered triple of pairwise distinct boundary points.
struct IdealTriple {
  BoundaryPoint p1, p2, p3;

  /// Throws ValidationError unless the three points are pairwise distinct.
  IdealTriple(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c);
};

enum class IsomTag { Identity, Elliptic, Parabolic, Hyperbolic };

/// Trace classification of a PSL(2,R) element. rotation_angle is set for
/// elliptics only; translation_length for hyperbolics only. The rotation
/// angle is extracted from the lift with nonnegative trace, so it lands in
/// (0, 2*pi) and identifies the element up to orientation of the rotation.
struct IsomClass {
  IsomTag tag = IsomTag::Identity;
  std::optional<double> rotation_angle;
  std::optional<double> translation_length;
};

/// Hyperbolic distance between two points of the upper half-plane.
/// Closed form: cosh d = 1 + (dx^2 + dy^2) / (2 y1 y2), evaluated through
/// asinh for stability at short range.
double distance(const HPoint& p, const HPoint& q);

/// cosh of the distance; cheaper than distance (no inverse transcendental)
/// and monotone in it, so threshold tests can use it directly.
double cosh_distance(const HPoint& p, const HPoint& q);

/// Area of a hyperbolic disk of radius R: 2*pi*(cosh R - 1). R must be >= 0.
double disk_area(double R);

/// Fractional-linear action of m on the upper half-plane.
HPoint apply(const MoebiusElement& m, const HPoint& p);

/// Trace trichotomy on the unit-determinant lift: |tr| < 2 elliptic,
/// |tr| = 2 parabolic (or identity), |tr| > 2 hyperbolic, with a 1e-12
/// decision band around 2. For elliptics |tr| = 2|cos(theta/2)|; for
/// hyperbolics |tr| = 2 cosh(len/2).
IsomClass classify(const MoebiusElement& m);

/// Fractional-linear action on the boundary circle R union {infinity},
/// with the usual pole/infinity conventions.
BoundaryPoint boundary_apply(const MoebiusElement& m, const BoundaryPoint& b);

/// The point where the geodesic through (p1, p2) meets the perpendicular
/// geodesic dropped from p3. Equivariant: the triple m*t maps to
/// apply(m, triple_to_point(t)).
HPoint triple_to_point(const IdealTriple& t);

/// The ratio (f(x+t) - f(x)) / (f(x) - f(x-t)) for t > 0. For a
/// quasisymmetric f with constant k the value lies in [1/k, k]. Throws
/// DegenerateSampleError when the denominator is not positive (f is not
/// strictly increasing at the sample).
double quasisymmetry_ratio(const std::function<double(double)>& f, double x,
                           double t);

}  // namespace qihyp::hyp2

#endif  // QIHYP_HYP2_HPP
