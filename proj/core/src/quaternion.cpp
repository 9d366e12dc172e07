#include "qde/quaternion.hpp"

#include <algorithm>
#include <cmath>

namespace qde {

Quaternion hamilton_product(const Quaternion& p, const Quaternion& q) {
    return {
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    };
}

Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

double norm(const Quaternion& q) {
    return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
}

Quaternion normalize(const Quaternion& q) {
    const double n = norm(q);
    if (n <= kEpsQ) throw NearZeroQuaternion("normalize: near-zero quaternion");
    return (1.0 / n) * q;
}

PolarDecomposition to_polar(const Quaternion& q) {
    const double n = norm(q);
    if (n <= kEpsQ) throw NearZeroQuaternion("to_polar: near-zero quaternion");
    PolarDecomposition p;
    p.magnitude = n;
    const Vec3 im = imag(q);
    const double imn = norm3(im);
    // atan2 with a non-negative first argument lands in [0, pi] directly,
    // resolving the sign ambiguity of the plain atan form at negative w.
    p.angle = std::atan2(imn, q.w);
    if (imn <= kEpsQ) {
        p.axis = {1.0, 0.0, 0.0};
        p.degenerate_axis = true;
    } else {
        p.axis = {im[0] / imn, im[1] / imn, im[2] / imn};
        p.degenerate_axis = false;
    }
    return p;
}

Quaternion from_polar(const PolarDecomposition& p) {
    const double c = std::cos(p.angle);
    const double s = std::sin(p.angle);
    return {p.magnitude * c, p.magnitude * s * p.axis[0],
            p.magnitude * s * p.axis[1], p.magnitude * s * p.axis[2]};
}

Quaternion sandwich(const Quaternion& rotor, const Quaternion& q) {
    return hamilton_product(hamilton_product(rotor, q), conjugate(rotor));
}

RotationBetween rotation_between(const Quaternion& q1, const Quaternion& q2) {
    RotationBetween r;
    const Vec3 u1 = imag(q1);
    const Vec3 u2 = imag(q2);
    const double n1 = norm3(u1);
    const double n2 = norm3(u2);
    if (n1 <= kEpsQ || n2 <= kEpsQ) {
        r.degenerate = true;
        return r;
    }
    // Cosine on normalized directions, clamped so the half-angle square
    // root below stays real against rounding.
    double c = dot(u1, u2) / (n1 * n2);
    c = std::clamp(c, -1.0, 1.0);
    r.angle = 2.0 * std::acos(std::sqrt((1.0 + c) / 2.0));
    const Vec3 cr = cross(u1, u2);
    const double cn = norm3(cr);
    if (cn <= kEpsQ) {
        // Parallel or antiparallel imaginary parts: angle is still
        // meaningful (0 or pi) but no axis is defined.
        r.degenerate = true;
        return r;
    }
    r.axis = {cr[0] / cn, cr[1] / cn, cr[2] / cn};
    return r;
}

Quaternion random_unit_quaternion(Rng& rng) {
    for (;;) {
        const Quaternion q{rng.normal(), rng.normal(), rng.normal(),
                           rng.normal()};
        const double n = norm(q);
        if (n > kEpsQ) return (1.0 / n) * q;
    }
}

Quaternion random_quaternion_uniform(Rng& rng, double lo, double hi) {
    if (!(lo < hi))
        throw InvalidRange("random_quaternion_uniform: requires lo < hi");
    const double a = rng.uniform(lo, hi);
    const double b = rng.uniform(lo, hi);
    const double c = rng.uniform(lo, hi);
    const double d = rng.uniform(lo, hi);
    return {a, b, c, d};
}

Vec3 random_unit_axis(Rng& rng) {
    const double zc = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const double s = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    return {s * std::cos(phi), s * std::sin(phi), zc};
}

}  // namespace qde
