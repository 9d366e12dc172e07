#include "qde/mutation.hpp"

#include <cmath>

#include "qde/errors.hpp"

namespace qde {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::ESD: return "ESD";
        case Strategy::EGSD: return "EGSD";
        case Strategy::PM1: return "PM1";
        case Strategy::PM3: return "PM3";
        case Strategy::PM13: return "PM13";
        case Strategy::RQ: return "RQ";
    }
    throw ConfigError("to_string: invalid strategy tag");
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "ESD") return Strategy::ESD;
    if (name == "EGSD") return Strategy::EGSD;
    if (name == "PM1") return Strategy::PM1;
    if (name == "PM3") return Strategy::PM3;
    if (name == "PM13") return Strategy::PM13;
    if (name == "RQ") return Strategy::RQ;
    throw ConfigError("unknown mutation strategy \"" + name +
                      "\"; valid strategies: ESD, EGSD, PM1, PM3, PM13, RQ");
}

void MutationSpec::validate() const {
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw InvalidRange("MutationSpec: alpha must be finite and > 0");
    if (!std::isfinite(beta))
        throw InvalidRange("MutationSpec: beta must be finite");
    if (!(egsd_component_range.first < egsd_component_range.second))
        throw InvalidRange("MutationSpec: egsd component range requires lo < hi");
}

Quaternion mutate_esd(const Quaternion& q1, const Quaternion& q2,
                      const Quaternion& q3, double alpha) {
    return q3 + alpha * (q2 - q1);
}

Quaternion mutate_egsd(const Quaternion& q1, const Quaternion& q2,
                       const Quaternion& q3, const Quaternion& qr) {
    return q3 + hamilton_product(qr, q2 - q1);
}

Quaternion polar_rotor(const Quaternion& q1, const Quaternion& q2,
                       double alpha, double beta) {
    const RotationBetween rb = rotation_between(q1, q2);
    if (rb.degenerate) return {alpha, 0.0, 0.0, 0.0};
    // Raw cross product of the imaginary parts: its length |u1||u2|sin(theta)
    // modulates the rotor magnitude with the donors' spread, which is what
    // lets the sandwich strategies expand as well as contract norms.
    const Vec3 n = cross(imag(q1), imag(q2));
    const double c = std::cos(beta * rb.angle);
    const double s = std::sin(beta * rb.angle);
    return {alpha * c, alpha * s * n[0], alpha * s * n[1], alpha * s * n[2]};
}

Quaternion mutate_pm1(const Quaternion& q1, const Quaternion& q2, double alpha,
                      double beta) {
    return sandwich(polar_rotor(q1, q2, alpha, beta), q1);
}

Quaternion mutate_pm3(const Quaternion& q1, const Quaternion& q2,
                      const Quaternion& q3, double alpha, double beta) {
    return sandwich(polar_rotor(q1, q2, alpha, beta), q3);
}

Quaternion mutate_pm13(const Quaternion& q1, const Quaternion& q2,
                       const Quaternion& q3, double alpha, double beta) {
    return q3 + sandwich(polar_rotor(q1, q2, alpha, beta), q1);
}

Quaternion mutate_rq(const Quaternion& q1, Rng& rng) {
    return sandwich(random_unit_quaternion(rng), q1);
}

Quaternion apply_mutation(const MutationSpec& spec, const Quaternion& q1,
                          const Quaternion& q2, const Quaternion& q3,
                          Rng& rng) {
    switch (spec.strategy) {
        case Strategy::ESD:
            return mutate_esd(q1, q2, q3, spec.alpha);
        case Strategy::EGSD:
            return mutate_egsd(q1, q2, q3,
                               random_quaternion_uniform(
                                   rng, spec.egsd_component_range.first,
                                   spec.egsd_component_range.second));
        case Strategy::PM1:
            return mutate_pm1(q1, q2, spec.alpha, spec.beta);
        case Strategy::PM3:
            return mutate_pm3(q1, q2, q3, spec.alpha, spec.beta);
        case Strategy::PM13:
            return mutate_pm13(q1, q2, q3, spec.alpha, spec.beta);
        case Strategy::RQ:
            return mutate_rq(q1, rng);
    }
    throw ConfigError("apply_mutation: invalid strategy tag");
}

}  // namespace qde
