#pragma once

#include <string>
#include <utility>

#include "qde/quaternion.hpp"

namespace qde {

// The six per-quaternion mutation strategies.
enum class Strategy { ESD, EGSD, PM1, PM3, PM13, RQ };

// Serialized names are part of the config/result-file format.
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);  // throws ConfigError

// Strategy tag plus its scale parameters.
//   alpha: magnitude scale (> 0). Doubles as the differential weight of the
//          simple-difference strategies and as F for the real-valued baseline.
//   beta:  angle scale of the polar rotor.
//   egsd_component_range: component range of the random quaternion the
//          EGSD strategy multiplies the donor difference by.
struct MutationSpec {
    Strategy strategy = Strategy::ESD;
    double alpha = 0.5;
    double beta = 0.5;
    std::pair<double, double> egsd_component_range{0.0, 1.0};

    // Throws InvalidRange on non-finite/non-positive alpha, non-finite beta,
    // or an empty component range.
    void validate() const;
};

// q3 + alpha * (q2 - q1), componentwise.
Quaternion mutate_esd(const Quaternion& q1, const Quaternion& q2,
                      const Quaternion& q3, double alpha);

// q3 + qr * (q2 - q1), Hamilton product; qr is drawn by the caller.
Quaternion mutate_egsd(const Quaternion& q1, const Quaternion& q2,
                       const Quaternion& q3, const Quaternion& qr);

// Rotor alpha * (cos(beta*theta) + sin(beta*theta) * n), where theta is the
// angle between the imaginary parts of q1 and q2 and n is their *raw*
// (unnormalized) cross product, so the rotor's magnitude couples to the
// donors' geometry: |rotor| = alpha * sqrt(cos^2 + |n|^2 sin^2). Degenerate
// geometry (zero or parallel imaginary parts) yields (alpha, 0, 0, 0).
Quaternion polar_rotor(const Quaternion& q1, const Quaternion& q2,
                       double alpha, double beta);

// rotor * q1 * conj(rotor) with rotor = polar_rotor(q1, q2, alpha, beta);
// the rotor is applied as returned (no renormalization), so the output norm
// is |rotor|^2 * |q1|.
Quaternion mutate_pm1(const Quaternion& q1, const Quaternion& q2, double alpha,
                      double beta);

// rotor * q3 * conj(rotor), rotor built from (q1, q2) as in mutate_pm1.
Quaternion mutate_pm3(const Quaternion& q1, const Quaternion& q2,
                      const Quaternion& q3, double alpha, double beta);

// q3 + rotor * q1 * conj(rotor): mutate_pm1 shifted by q3.
Quaternion mutate_pm13(const Quaternion& q1, const Quaternion& q2,
                       const Quaternion& q3, double alpha, double beta);

// r * q1 * conj(r) with r a random unit quaternion: a uniformly random
// rotation of q1's imaginary part; preserves norm and real part.
Quaternion mutate_rq(const Quaternion& q1, Rng& rng);

// Strategy dispatch used by the evolution loop: q1, q2, q3 are the blocks of
// the three donors; rng feeds the strategies that consume randomness.
Quaternion apply_mutation(const MutationSpec& spec, const Quaternion& q1,
                          const Quaternion& q2, const Quaternion& q3,
                          Rng& rng);

}  // namespace qde
