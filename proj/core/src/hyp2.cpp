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

#include "qihyp/hyp2.hpp"

#include <algorithm>
#include <cmath>

namespace qihyp::hyp2 {

namespace {

constexpr double kTraceBand = 1e-12;     // trichotomy band around |tr| = 2
constexpr double kIdentityTol = 1e-10;   // identity detection inside the band
constexpr double kPi = 3.14159265358979323846;

}  // namespace

HPoint::HPoint(double x_, double y_) : x(x_), y(y_) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw ValidationError("HPoint requires finite coordinates with y > 0");
  }
}

MoebiusElement::MoebiusElement() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

MoebiusElement::MoebiusElement(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw ValidationError("MoebiusElement requires positive determinant");
  }
  const double scale = 1.0 / std::sqrt(det);
  a_ = a * scale;
  b_ = b * scale;
  c_ = c * scale;
  d_ = d * scale;
  // Canonical sign: first nonzero entry in (a, b, c, d) is >= 0.
  double lead = a_;
  if (lead == 0.0) lead = b_;
  if (lead == 0.0) lead = c_;
  if (lead == 0.0) lead = d_;
  if (lead < 0.0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

MoebiusElement MoebiusElement::rotation(const HPoint& center, double angle) {
  const double ch = std::cos(angle / 2.0);
  const double sh = std::sin(angle / 2.0);
  // Conjugate the rotation about i by the map taking i to the center.
  const double sy = std::sqrt(center.y);
  const MoebiusElement to_center(sy, center.x / sy, 0.0, 1.0 / sy);
  const MoebiusElement rot(ch, sh, -sh, ch);
  return to_center * rot * to_center.inverse();
}

MoebiusElement MoebiusElement::axis_translation(double length) {
  const double e = std::exp(length / 2.0);
  return MoebiusElement(e, 0.0, 0.0, 1.0 / e);
}

MoebiusElement MoebiusElement::horizontal_translation(double shift) {
  return MoebiusElement(1.0, shift, 0.0, 1.0);
}

MoebiusElement MoebiusElement::inverse() const {
  return MoebiusElement(d_, -b_, -c_, a_);
}

MoebiusElement MoebiusElement::operator*(const MoebiusElement& rhs) const {
  return MoebiusElement(a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_,
                        c_ * rhs.a_ + d_ * rhs.c_, c_ * rhs.b_ + d_ * rhs.d_);
}

bool MoebiusElement::approx_equal(const MoebiusElement& rhs, double tol) const {
  const double plus = std::max({std::abs(a_ - rhs.a_), std::abs(b_ - rhs.b_),
                                std::abs(c_ - rhs.c_), std::abs(d_ - rhs.d_)});
  const double minus = std::max({std::abs(a_ + rhs.a_), std::abs(b_ + rhs.b_),
                                 std::abs(c_ + rhs.c_), std::abs(d_ + rhs.d_)});
  return std::min(plus, minus) <= tol;
}

BoundaryPoint BoundaryPoint::infinity() { return BoundaryPoint(true, 0.0); }

BoundaryPoint BoundaryPoint::at(double value) {
  if (!std::isfinite(value)) {
    throw ValidationError("finite BoundaryPoint requires a finite value");
  }
  return BoundaryPoint(false, value);
}

double BoundaryPoint::value() const {
  if (infinite_) throw ValidationError("BoundaryPoint is the point at infinity");
  return value_;
}

bool BoundaryPoint::operator==(const BoundaryPoint& rhs) const {
  if (infinite_ != rhs.infinite_) return false;
  return infinite_ || value_ == rhs.value_;
}

IdealTriple::IdealTriple(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c)
    : p1(a), p2(b), p3(c) {
  if (p1 == p2 || p2 == p3 || p1 == p3) {
    throw ValidationError("IdealTriple requires pairwise distinct points");
  }
}

double cosh_distance(const HPoint& p, const HPoint& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y);
}

double distance(const HPoint& p, const HPoint& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double n2 = dx * dx + dy * dy;
  // cosh d - 1 = n2 / (2 y1 y2) = 2 sinh^2(d/2).
  return 2.0 * std::asinh(0.5 * std::sqrt(n2 / (p.y * q.y)));
}

double disk_area(double R) {
  if (!(R >= 0.0)) throw ValidationError("disk_area requires R >= 0");
  return 2.0 * kPi * (std::cosh(R) - 1.0);
}

HPoint apply(const MoebiusElement& m, const HPoint& p) {
  const double cx = m.c() * p.x + m.d();
  const double cy = m.c() * p.y;
  const double denom = cx * cx + cy * cy;
  const double ax = m.a() * p.x + m.b();
  const double ay = m.a() * p.y;
  // Re and Im of (az + b)(conj(cz + d)) / |cz + d|^2 with det = 1.
  return HPoint((ax * cx + ay * cy) / denom, p.y / denom);
}

IsomClass classify(const MoebiusElement& m) {
  IsomClass out;
  const double tr = std::abs(m.trace());
  if (tr < 2.0 - kTraceBand) {
    out.tag = IsomTag::Elliptic;
    out.rotation_angle = 2.0 * std::acos(tr / 2.0);
  } else if (tr > 2.0 + kTraceBand) {
    out.tag = IsomTag::Hyperbolic;
    out.translation_length = 2.0 * std::acosh(tr / 2.0);
  } else if (m.approx_equal(MoebiusElement(), kIdentityTol)) {
    out.tag = IsomTag::Identity;
  } else {
    out.tag = IsomTag::Parabolic;
  }
  return out;
}

BoundaryPoint boundary_apply(const MoebiusElement& m, const BoundaryPoint& b) {
  if (b.is_infinity()) {
    if (m.c() == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::at(m.a() / m.c());
  }
  const double x = b.value();
  const double denom = m.c() * x + m.d();
  if (denom == 0.0) return BoundaryPoint::infinity();
  return BoundaryPoint::at((m.a() * x + m.b()) / denom);
}

namespace {

// Matrix of the fractional-linear map sending (z1, z2, z3) to (0, 1, inf),
// as raw entries (the determinant sign is resolved by the caller).
struct RawMat {
  double a, b, c, d;
};

RawMat to_zero_one_inf(const IdealTriple& t) {
  if (t.p1.is_infinity()) {
    // z -> (z2 - z3) / (z - z3)
    const double z2 = t.p2.value(), z3 = t.p3.value();
    return {0.0, z2 - z3, 1.0, -z3};
  }
  if (t.p2.is_infinity()) {
    // z -> (z - z1) / (z - z3)
    const double z1 = t.p1.value(), z3 = t.p3.value();
    return {1.0, -z1, 1.0, -z3};
  }
  if (t.p3.is_infinity()) {
    // z -> (z - z1) / (z2 - z1)
    const double z1 = t.p1.value(), z2 = t.p2.value();
    return {1.0, -z1, 0.0, z2 - z1};
  }
  const double z1 = t.p1.value(), z2 = t.p2.value(), z3 = t.p3.value();
  return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
}

}  // namespace

HPoint triple_to_point(const IdealTriple& t) {
  // Normalize the triple to (-1, 1, inf) -- or its orientation-reversed
  // partner (1, -1, inf) when the triple is negatively oriented. For both
  // standard configurations the geodesic is the unit semicircle and the
  // perpendicular from the third point is the imaginary axis, so the
  // intersection is (0, 1); pull it back through the normalizing map.
  const RawMat m = to_zero_one_inf(t);
  // Compose with w -> 2w - 1, taking (0, 1, inf) to (-1, 1, inf).
  double a = 2.0 * m.a - m.c;
  double b = 2.0 * m.b - m.d;
  double c = m.c;
  double d = m.d;
  if (a * d - b * c < 0.0) {
    a = -a;
    b = -b;
  }
  const MoebiusElement g(a, b, c, d);
  return apply(g.inverse(), HPoint(0.0, 1.0));
}

double quasisymmetry_ratio(const std::function<double(double)>& f, double x,
                           double t) {
  if (!(t > 0.0)) throw ValidationError("quasisymmetry_ratio requires t > 0");
  const double hi = f(x + t);
  const double mid = f(x);
  const double lo = f(x - t);
  const double denom = mid - lo;
  if (!(denom > 0.0)) {
    throw DegenerateSampleError(
        "quasisymmetry_ratio: f is not strictly increasing at the sample");
  }
  return (hi - mid) / denom;
}

}  // namespace qihyp::hyp2
