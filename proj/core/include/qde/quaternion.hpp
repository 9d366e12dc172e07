#pragma once

#include <array>
#include <cmath>

#include "qde/random.hpp"

namespace qde {

// Componentwise comparison tolerance for quaternion equality and the
// near-zero guards of normalize/to_polar/rotation_between.
inline constexpr double kEpsQ = 1e-12;

using Vec3 = std::array<double, 3>;

// Element of the 4-dimensional real algebra spanned by {1, i, j, k} with
// i^2 = j^2 = k^2 = ijk = -1. w is the real coefficient.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Magnitude/angle/axis representation: q = magnitude * (cos(angle) +
// sin(angle) * axis). angle lies in [0, pi]; axis is unit unless the
// imaginary part was near zero, in which case it is the fallback (1,0,0)
// and degenerate_axis is set.
struct PolarDecomposition {
    double magnitude = 0.0;
    double angle = 0.0;
    Vec3 axis{1.0, 0.0, 0.0};
    bool degenerate_axis = false;
};

// Relative geometry of two quaternions' imaginary parts: the angle between
// them (computed on normalized directions) and the unit rotation axis
// perpendicular to both. degenerate is set when either imaginary part or
// their cross product is near zero; the axis then falls back to (1,0,0).
struct RotationBetween {
    double angle = 0.0;
    Vec3 axis{1.0, 0.0, 0.0};
    bool degenerate = false;
};

// --- componentwise arithmetic -------------------------------------------

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.w, s * q.x, s * q.y, s * q.z};
}

constexpr Vec3 imag(const Quaternion& q) { return {q.x, q.y, q.z}; }

constexpr double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}
inline double norm3(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline bool approx_equal(const Quaternion& a, const Quaternion& b,
                         double tol = kEpsQ) {
    return std::abs(a.w - b.w) <= tol && std::abs(a.x - b.x) <= tol &&
           std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

// --- algebra --------------------------------------------------------------

// Hamilton product (non-commutative).
Quaternion hamilton_product(const Quaternion& p, const Quaternion& q);

// (w, -x, -y, -z).
Quaternion conjugate(const Quaternion& q);

// Euclidean magnitude sqrt(w^2 + x^2 + y^2 + z^2).
double norm(const Quaternion& q);

// q / norm(q). Throws NearZeroQuaternion when norm(q) <= kEpsQ.
Quaternion normalize(const Quaternion& q);

// Magnitude/angle/axis decomposition; angle = atan2(|imag|, w) in [0, pi].
// Throws NearZeroQuaternion when norm(q) <= kEpsQ.
PolarDecomposition to_polar(const Quaternion& q);

// Inverse of to_polar: magnitude * (cos(angle) + sin(angle) * axis).
Quaternion from_polar(const PolarDecomposition& p);

// rotor * q * conjugate(rotor). For a unit rotor this rotates the imaginary
// part of q and preserves both norm(q) and q.w; callers wanting a rotation
// must pass a unit rotor (not checked here).
Quaternion sandwich(const Quaternion& rotor, const Quaternion& q);

// Angle/axis between the imaginary parts of q1 and q2. The cosine is taken
// on *normalized* imaginary parts and clamped to [-1, 1] so the half-angle
// form 2*acos(sqrt((1+c)/2)) stays real; the returned axis is the normalized
// cross product. Total: degenerate inputs set the flag instead of throwing.
RotationBetween rotation_between(const Quaternion& q1, const Quaternion& q2);

// --- random sampling -------------------------------------------------------

// Uniform on the unit 3-sphere (four i.i.d. standard normals, normalized).
Quaternion random_unit_quaternion(Rng& rng);

// Each component i.i.d. uniform on [lo, hi). Throws InvalidRange.
Quaternion random_quaternion_uniform(Rng& rng, double lo, double hi);

// Uniform direction on the unit 2-sphere.
Vec3 random_unit_axis(Rng& rng);

}  // namespace qde
