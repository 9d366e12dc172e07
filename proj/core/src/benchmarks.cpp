#include "qde/benchmarks.hpp"

#include <algorithm>
#include <cmath>

#include "qde/errors.hpp"
#include "qde/random.hpp"

namespace qde {

std::string to_string(FunctionGroup g) {
    switch (g) {
        case FunctionGroup::Separable: return "Separable";
        case FunctionGroup::ULow: return "ULow";
        case FunctionGroup::UHigh: return "UHigh";
        case FunctionGroup::MAdequate: return "MAdequate";
        case FunctionGroup::MWeak: return "MWeak";
    }
    throw ConfigError("to_string: invalid function group");
}

FunctionGroup group_from_string(const std::string& name) {
    if (name == "Separable") return FunctionGroup::Separable;
    if (name == "ULow") return FunctionGroup::ULow;
    if (name == "UHigh") return FunctionGroup::UHigh;
    if (name == "MAdequate") return FunctionGroup::MAdequate;
    if (name == "MWeak") return FunctionGroup::MWeak;
    throw ConfigError("unknown function group \"" + name +
                      "\"; valid groups: Separable, ULow, UHigh, MAdequate, "
                      "MWeak");
}

const std::vector<FunctionInfo>& function_registry() {
    static const std::vector<FunctionInfo> registry = {
        {1, "Sphere", FunctionGroup::Separable},
        {2, "Ellipsoidal", FunctionGroup::Separable},
        {3, "Rastrigin", FunctionGroup::Separable},
        {4, "Buche-Rastrigin", FunctionGroup::Separable},
        {5, "Linear Slope", FunctionGroup::Separable},
        {6, "Attractive Sector", FunctionGroup::ULow},
        {7, "Step Ellipsoidal", FunctionGroup::ULow},
        {8, "Rosenbrock", FunctionGroup::ULow},
        {9, "Rotated Rosenbrock", FunctionGroup::ULow},
        {10, "Rotated Ellipsoidal", FunctionGroup::UHigh},
        {11, "Discus", FunctionGroup::UHigh},
        {12, "Bent Cigar", FunctionGroup::UHigh},
        {13, "Sharp Ridge", FunctionGroup::UHigh},
        {14, "Different Powers", FunctionGroup::UHigh},
        {15, "Rastrigin (non-separable)", FunctionGroup::MAdequate},
        {16, "Weierstrass", FunctionGroup::MAdequate},
        {17, "Schaffers F7", FunctionGroup::MAdequate},
        {18, "Schaffers F7 (ill-conditioned)", FunctionGroup::MAdequate},
        {19, "Composite Griewank-Rosenbrock", FunctionGroup::MAdequate},
        {20, "Schwefel", FunctionGroup::MWeak},
        {21, "Gallagher 101 Peaks", FunctionGroup::MWeak},
        {22, "Gallagher 21 Peaks", FunctionGroup::MWeak},
        {23, "Katsuura", FunctionGroup::MWeak},
        {24, "Lunacek bi-Rastrigin", FunctionGroup::MWeak},
    };
    return registry;
}

std::vector<FunctionInfo> list_functions(std::optional<FunctionGroup> group) {
    std::vector<FunctionInfo> out;
    for (const auto& fi : function_registry())
        if (!group || fi.group == *group) out.push_back(fi);
    return out;
}

const std::vector<int>& smoke_tier() {
    static const std::vector<int> tier = {1, 8, 12, 15, 20};
    return tier;
}

namespace transforms {

double t_osz(double v) {
    if (v == 0.0) return 0.0;
    const double xhat = std::log(std::abs(v));
    const double c1 = v > 0.0 ? 10.0 : 5.5;
    const double c2 = v > 0.0 ? 7.9 : 3.1;
    const double s = v > 0.0 ? 1.0 : -1.0;
    return s * std::exp(xhat + 0.049 * (std::sin(c1 * xhat) +
                                        std::sin(c2 * xhat)));
}

std::vector<double> t_osz(std::vector<double> x) {
    for (double& v : x) v = t_osz(v);
    return x;
}

std::vector<double> t_asy(std::vector<double> x, double beta) {
    const int d = static_cast<int>(x.size());
    for (int i = 0; i < d; ++i) {
        if (x[i] > 0.0) {
            const double e =
                1.0 + beta * (d > 1 ? static_cast<double>(i) / (d - 1) : 0.0) *
                          std::sqrt(x[i]);
            x[i] = std::pow(x[i], e);
        }
    }
    return x;
}

std::vector<double> lambda_diag(double alpha, int dim) {
    std::vector<double> lam(dim);
    for (int i = 0; i < dim; ++i)
        lam[i] = std::pow(
            alpha, 0.5 * (dim > 1 ? static_cast<double>(i) / (dim - 1) : 0.0));
    return lam;
}

double f_pen(const std::vector<double>& x) {
    double p = 0.0;
    for (double v : x) {
        const double over = std::abs(v) - 5.0;
        if (over > 0.0) p += over * over;
    }
    return p;
}

}  // namespace transforms

namespace {

using transforms::f_pen;
using transforms::lambda_diag;
using transforms::t_asy;
using transforms::t_osz;

std::vector<double> identity_matrix(int d) {
    std::vector<double> m(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = 1.0;
    return m;
}

// Random orthonormal matrix: Gram-Schmidt on i.i.d. standard normal rows.
std::vector<double> random_rotation(Rng& rng, int d) {
    std::vector<double> m(static_cast<std::size_t>(d) * d);
    for (;;) {
        for (double& v : m) v = rng.normal();
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            double* ri = &m[static_cast<std::size_t>(i) * d];
            for (int j = 0; j < i; ++j) {
                const double* rj = &m[static_cast<std::size_t>(j) * d];
                double dp = 0.0;
                for (int k = 0; k < d; ++k) dp += ri[k] * rj[k];
                for (int k = 0; k < d; ++k) ri[k] -= dp * rj[k];
            }
            double n = 0.0;
            for (int k = 0; k < d; ++k) n += ri[k] * ri[k];
            n = std::sqrt(n);
            if (n < 1e-8) {
                ok = false;  // numerically dependent draw; redo the matrix
                break;
            }
            for (int k = 0; k < d; ++k) ri[k] /= n;
        }
        if (ok) return m;
    }
}

std::vector<double> matvec(const std::vector<double>& m,
                           const std::vector<double>& v) {
    const int d = static_cast<int>(v.size());
    std::vector<double> out(d, 0.0);
    for (int i = 0; i < d; ++i) {
        const double* row = &m[static_cast<std::size_t>(i) * d];
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += row[j] * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> sub(const std::vector<double>& a,
                        const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

double sqnorm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

// Index permutation 0..n-1 via Fisher-Yates on the given stream.
std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(p[i], p[rng.uniform_int(0, i)]);
    return p;
}

double round_half_up(double v) { return std::floor(v + 0.5); }

constexpr double kSchwefelShift = 4.2096874633 / 2.0;  // |x_opt| coordinate
constexpr double kSchwefelValue = 4.189828872724339;   // optimum constant

double rosenbrock_core(const std::vector<double>& z) {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i] * z[i] - z[i + 1];
        const double b = z[i] - 1.0;
        f += 100.0 * a * a + b * b;
    }
    return f;
}

double rastrigin_core(const std::vector<double>& z) {
    double c = 0.0;
    for (double v : z) c += std::cos(2.0 * M_PI * v);
    return 10.0 * (static_cast<double>(z.size()) - c) + sqnorm(z);
}

// Per-peak quadratic form exponents and weights of the two many-peaks
// functions (many local optima; the global peak is the best-conditioned).
// Takes the instance state by reference because it is called from the
// factory, which is the class's only friend.
void build_gallagher(int d, Rng& rng, int npeaks,
                     std::vector<std::vector<double>>& peak_y,
                     std::vector<std::vector<double>>& peak_cdiag,
                     std::vector<double>& peak_w) {
    const int m = npeaks;

    // Condition levels: the global peak gets sqrt(1000); the rest get
    // 1000^{p/(m-2)} for a random permutation p of 0..m-2.
    std::vector<double> cond(m);
    cond[0] = std::sqrt(1000.0);
    const auto perm = random_permutation(rng, m - 1);
    for (int i = 1; i < m; ++i)
        cond[i] =
            std::pow(1000.0, static_cast<double>(perm[i - 1]) / (m - 2));

    peak_cdiag.assign(m, std::vector<double>(d));
    for (int i = 0; i < m; ++i) {
        const auto kperm = random_permutation(rng, d);
        for (int j = 0; j < d; ++j)
            peak_cdiag[i][j] = std::pow(
                cond[i],
                (d > 1 ? static_cast<double>(kperm[j]) / (d - 1) : 0.0) - 0.5);
    }

    peak_w.resize(m);
    peak_w[0] = 10.0;
    for (int i = 1; i < m; ++i)
        peak_w[i] = 1.1 + 8.0 * static_cast<double>(i - 1) / (m - 2);

    peak_y.assign(m, std::vector<double>(d));
    for (int j = 0; j < d; ++j) peak_y[0][j] = rng.uniform(-3.92, 3.92);
    for (int i = 1; i < m; ++i)
        for (int j = 0; j < d; ++j) peak_y[i][j] = rng.uniform(-4.9, 4.9);
}

}  // namespace

BenchmarkInstance make_instance(int function_id, int dimension,
                                std::uint64_t seed,
                                bool identity_inner_rotation) {
    if (function_id < 1 || function_id > 24)
        throw UnknownFunction("function id must lie in 1..24, got " +
                              std::to_string(function_id));
    if (dimension != 3 && (dimension < 4 || dimension % 4 != 0))
        throw UnsupportedDimension(
            "dimension must be 3 or a positive multiple of 4, got " +
            std::to_string(dimension));

    BenchmarkInstance inst;
    inst.id_ = function_id;
    const auto& fi = function_registry()[function_id - 1];
    inst.name_ = fi.name;
    inst.group_ = fi.group;
    inst.dim_ = dimension;
    inst.seed_ = seed;

    const std::uint64_t base =
        mix_seed(mix_seed(seed, static_cast<std::uint64_t>(function_id)),
                 static_cast<std::uint64_t>(dimension));
    Rng rng_xopt(mix_seed(base, 1));
    Rng rng_rot(mix_seed(base, 2));
    Rng rng_q(mix_seed(base, 3));
    Rng rng_extra(mix_seed(base, 4));
    Rng rng_fopt(mix_seed(base, 5));

    const int d = dimension;
    inst.fopt_ = round_half_up(rng_fopt.uniform(-100.0, 100.0) * 100.0) / 100.0;

    // Rotations are drawn from dedicated streams for every function so that
    // the identity-rotation twin of an instance shares all its other state.
    inst.rot_inner_ = random_rotation(rng_rot, d);
    inst.rot_q_ = random_rotation(rng_q, d);
    inst.rot_outer_ = inst.rot_inner_;
    if (identity_inner_rotation) inst.rot_inner_ = identity_matrix(d);

    // Default interior optimum; overridden below where the function's
    // structure dictates the optimum location.
    inst.xopt_.resize(d);
    for (double& v : inst.xopt_) v = rng_xopt.uniform(-4.0, 4.0);

    const double rosen_scale = std::max(1.0, std::sqrt(d) / 8.0);

    switch (function_id) {
        case 3:
            inst.lam_ = lambda_diag(10.0, d);
            break;
        case 5: {
            inst.signs_.resize(d);
            for (double& s : inst.signs_)
                s = rng_extra.u01() < 0.5 ? -1.0 : 1.0;
            for (int i = 0; i < d; ++i) inst.xopt_[i] = 5.0 * inst.signs_[i];
            break;
        }
        case 6:
        case 7:
        case 13:
            inst.lam_ = lambda_diag(10.0, d);
            break;
        case 9:
        case 19: {
            // Optimum determined by the rotation: z(x_opt) must be all-ones.
            inst.scalar_a_ = rosen_scale;
            const double c = 0.5 / rosen_scale;
            // x_opt = R^T * c * ones; note the *actual* inner matrix is used,
            // so the identity twin gets its own consistent optimum.
            std::vector<double> ones(d, c);
            std::vector<double> xo(d, 0.0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    xo[j] += inst.rot_inner_[static_cast<std::size_t>(i) * d +
                                             j] *
                             ones[i];
            inst.xopt_ = xo;
            break;
        }
        case 8:
            inst.scalar_a_ = rosen_scale;
            break;
        case 15:
            inst.lam_ = lambda_diag(10.0, d);
            break;
        case 16:
            inst.lam_ = lambda_diag(0.01, d);
            break;
        case 17:
            inst.lam_ = lambda_diag(10.0, d);
            break;
        case 18:
            inst.lam_ = lambda_diag(1000.0, d);
            break;
        case 20: {
            inst.lam_ = lambda_diag(10.0, d);
            inst.signs_.resize(d);
            for (double& s : inst.signs_)
                s = rng_extra.u01() < 0.5 ? -1.0 : 1.0;
            for (int i = 0; i < d; ++i)
                inst.xopt_[i] = kSchwefelShift * inst.signs_[i];
            break;
        }
        case 21:
            build_gallagher(d, rng_extra, 101, inst.peak_y_, inst.peak_cdiag_,
                            inst.peak_w_);
            break;
        case 22:
            build_gallagher(d, rng_extra, 21, inst.peak_y_, inst.peak_cdiag_,
                            inst.peak_w_);
            break;
        case 23:
            inst.lam_ = lambda_diag(100.0, d);
            break;
        case 24: {
            inst.lam_ = lambda_diag(100.0, d);
            inst.signs_.resize(d);
            for (double& s : inst.signs_)
                s = rng_extra.u01() < 0.5 ? -1.0 : 1.0;
            const double mu0 = 2.5;
            for (int i = 0; i < d; ++i)
                inst.xopt_[i] = 0.5 * mu0 * inst.signs_[i];
            const double s24 =
                1.0 - 1.0 / (2.0 * std::sqrt(static_cast<double>(d) + 20.0) -
                             8.2);
            inst.scalar_a_ = -std::sqrt((mu0 * mu0 - 1.0) / s24);  // mu1
            break;
        }
        default:
            break;
    }

    // The global peak of the many-peaks functions *is* the optimum.
    if (function_id == 21 || function_id == 22) inst.xopt_ = inst.peak_y_[0];

    return inst;
}

double BenchmarkInstance::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw DimensionMismatch(
            "evaluate: expected dimension " + std::to_string(dim_) + ", got " +
            std::to_string(x.size()));
    const int d = dim_;

    switch (id_) {
        case 1:
            return sqnorm(sub(x, xopt_));
        case 2: {
            const auto z = t_osz(sub(x, xopt_));
            double f = 0.0;
            for (int i = 0; i < d; ++i)
                f += std::pow(10.0, 6.0 * (d > 1 ? static_cast<double>(i) /
                                                       (d - 1)
                                                 : 0.0)) *
                     z[i] * z[i];
            return f;
        }
        case 3: {
            auto z = t_asy(t_osz(sub(x, xopt_)), 0.2);
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            return rastrigin_core(z);
        }
        case 4: {
            const auto t = t_osz(sub(x, xopt_));
            std::vector<double> z(d);
            for (int i = 0; i < d; ++i) {
                double s = std::pow(
                    10.0, 0.5 * (d > 1 ? static_cast<double>(i) / (d - 1)
                                       : 0.0));
                if (i % 2 == 0 && t[i] > 0.0) s *= 10.0;  // odd 1-based index
                z[i] = s * t[i];
            }
            return rastrigin_core(z) + 100.0 * f_pen(x);
        }
        case 5: {
            double f = 0.0;
            for (int i = 0; i < d; ++i) {
                const double s =
                    signs_[i] *
                    std::pow(10.0, d > 1 ? static_cast<double>(i) / (d - 1)
                                         : 0.0);
                const double z = xopt_[i] * x[i] < 25.0 ? x[i] : xopt_[i];
                f += 5.0 * std::abs(s) - s * z;
            }
            return f;
        }
        case 6: {
            auto z = matvec(rot_inner_, sub(x, xopt_));
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            z = matvec(rot_q_, z);
            double f = 0.0;
            for (int i = 0; i < d; ++i) {
                const double s = z[i] * xopt_[i] > 0.0 ? 100.0 : 1.0;
                f += s * z[i] * s * z[i];
            }
            return std::pow(transforms::t_osz(f), 0.9);
        }
        case 7: {
            auto zhat = matvec(rot_inner_, sub(x, xopt_));
            for (int i = 0; i < d; ++i) zhat[i] *= lam_[i];
            std::vector<double> ztilde(d);
            for (int i = 0; i < d; ++i)
                ztilde[i] = std::abs(zhat[i]) > 0.5
                                ? round_half_up(zhat[i])
                                : round_half_up(10.0 * zhat[i]) / 10.0;
            const auto z = matvec(rot_q_, ztilde);
            double s = 0.0;
            for (int i = 0; i < d; ++i)
                s += std::pow(10.0, 2.0 * (d > 1 ? static_cast<double>(i) /
                                                       (d - 1)
                                                 : 0.0)) *
                     z[i] * z[i];
            return 0.1 * std::max(std::abs(zhat[0]) / 1.0e4, s) + f_pen(x);
        }
        case 8: {
            std::vector<double> z = sub(x, xopt_);
            for (double& v : z) v = scalar_a_ * v + 1.0;
            return rosenbrock_core(z);
        }
        case 9:
        case 19: {
            // Absolute-point form: z = c R x + 1/2, optimum where z is
            // all-ones (x_opt = R^T (1/(2c)) ones, set in make_instance).
            auto z = matvec(rot_inner_, x);
            for (double& v : z) v = scalar_a_ * v + 0.5;
            if (id_ == 9) return rosenbrock_core(z);
            // Composite Griewank-Rosenbrock over the Rosenbrock terms.
            double f = 0.0;
            for (int i = 0; i + 1 < d; ++i) {
                const double a = z[i] * z[i] - z[i + 1];
                const double b = z[i] - 1.0;
                const double s = 100.0 * a * a + b * b;
                f += s / 4000.0 - std::cos(s);
            }
            return 10.0 / (d - 1) * f + 10.0;
        }
        case 10: {
            const auto z = t_osz(matvec(rot_inner_, sub(x, xopt_)));
            double f = 0.0;
            for (int i = 0; i < d; ++i)
                f += std::pow(10.0, 6.0 * (d > 1 ? static_cast<double>(i) /
                                                       (d - 1)
                                                 : 0.0)) *
                     z[i] * z[i];
            return f;
        }
        case 11: {
            const auto z = t_osz(matvec(rot_inner_, sub(x, xopt_)));
            double f = 1.0e6 * z[0] * z[0];
            for (int i = 1; i < d; ++i) f += z[i] * z[i];
            return f;
        }
        case 12: {
            auto z = t_asy(matvec(rot_inner_, sub(x, xopt_)), 0.5);
            z = matvec(rot_outer_, z);
            double f = z[0] * z[0];
            for (int i = 1; i < d; ++i) f += 1.0e6 * z[i] * z[i];
            return f;
        }
        case 13: {
            auto z = matvec(rot_inner_, sub(x, xopt_));
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            z = matvec(rot_q_, z);
            double tail = 0.0;
            for (int i = 1; i < d; ++i) tail += z[i] * z[i];
            return z[0] * z[0] + 100.0 * std::sqrt(tail);
        }
        case 14: {
            const auto z = matvec(rot_inner_, sub(x, xopt_));
            double f = 0.0;
            for (int i = 0; i < d; ++i)
                f += std::pow(std::abs(z[i]),
                              2.0 + 4.0 * (d > 1 ? static_cast<double>(i) /
                                                       (d - 1)
                                                 : 0.0));
            return std::sqrt(f);
        }
        case 15: {
            auto z = t_asy(t_osz(matvec(rot_inner_, sub(x, xopt_))), 0.2);
            z = matvec(rot_q_, z);
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            z = matvec(rot_outer_, z);
            return rastrigin_core(z);
        }
        case 16: {
            auto z = t_osz(matvec(rot_inner_, sub(x, xopt_)));
            z = matvec(rot_q_, z);
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            z = matvec(rot_outer_, z);
            double outer = 0.0;
            for (int i = 0; i < d; ++i) {
                double g = 0.0;
                for (int k = 0; k <= 11; ++k)
                    g += std::pow(0.5, k) *
                         std::cos(2.0 * M_PI * std::pow(3.0, k) *
                                  (z[i] + 0.5));
                outer += g;
            }
            const double f0 = -1.99951171875;  // sum(1/2^k cos(pi 3^k))
            const double m = outer / d - f0;
            return 10.0 * m * m * m + 10.0 / d * f_pen(x);
        }
        case 17:
        case 18: {
            auto z = t_asy(matvec(rot_inner_, sub(x, xopt_)), 0.5);
            z = matvec(rot_q_, z);
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            double acc = 0.0;
            for (int i = 0; i + 1 < d; ++i) {
                const double s =
                    std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
                const double r = std::sqrt(s);
                const double t = std::sin(50.0 * std::pow(s, 0.2));
                acc += r + r * t * t;
            }
            acc /= d - 1;
            return acc * acc + 10.0 * f_pen(x);
        }
        case 20: {
            std::vector<double> xhat(d);
            for (int i = 0; i < d; ++i) xhat[i] = 2.0 * signs_[i] * x[i];
            std::vector<double> zhat(d);
            zhat[0] = xhat[0];
            for (int i = 1; i < d; ++i)
                zhat[i] =
                    xhat[i] + 0.25 * (xhat[i - 1] - 2.0 * kSchwefelShift);
            std::vector<double> z(d);
            for (int i = 0; i < d; ++i)
                z[i] = 100.0 * (lam_[i] * (zhat[i] - 2.0 * kSchwefelShift) +
                                2.0 * kSchwefelShift);
            double f = 0.0;
            for (int i = 0; i < d; ++i)
                f -= z[i] * std::sin(std::sqrt(std::abs(z[i])));
            std::vector<double> zp(d);
            for (int i = 0; i < d; ++i) zp[i] = z[i] / 100.0;
            return f / (100.0 * d) + kSchwefelValue + 100.0 * f_pen(zp);
        }
        case 21:
        case 22: {
            const int m = static_cast<int>(peak_w_.size());
            double best = 0.0;
            for (int i = 0; i < m; ++i) {
                const auto r = matvec(rot_inner_, sub(x, peak_y_[i]));
                double q = 0.0;
                for (int j = 0; j < d; ++j)
                    q += peak_cdiag_[i][j] * r[j] * r[j];
                best = std::max(best,
                                peak_w_[i] * std::exp(-q / (2.0 * d)));
            }
            const double t = transforms::t_osz(10.0 - best);
            return t * t + f_pen(x);
        }
        case 23: {
            auto z = matvec(rot_inner_, sub(x, xopt_));
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            z = matvec(rot_q_, z);
            double prod = 1.0;
            for (int i = 0; i < d; ++i) {
                double s = 0.0;
                double p2 = 1.0;
                for (int j = 1; j <= 32; ++j) {
                    p2 *= 2.0;
                    const double v = p2 * z[i];
                    s += std::abs(v - round_half_up(v)) / p2;
                }
                prod *= std::pow(1.0 + (i + 1) * s,
                                 10.0 / std::pow(d, 1.2));
            }
            const double c = 10.0 / (d * d);
            return c * prod - c + f_pen(x);
        }
        case 24: {
            const double mu0 = 2.5;
            const double mu1 = scalar_a_;
            const double s24 =
                1.0 - 1.0 / (2.0 * std::sqrt(static_cast<double>(d) + 20.0) -
                             8.2);
            std::vector<double> xhat(d);
            for (int i = 0; i < d; ++i) xhat[i] = 2.0 * signs_[i] * x[i];
            std::vector<double> shifted(d);
            for (int i = 0; i < d; ++i) shifted[i] = xhat[i] - mu0;
            auto z = matvec(rot_inner_, shifted);
            for (int i = 0; i < d; ++i) z[i] *= lam_[i];
            z = matvec(rot_q_, z);
            double t1 = 0.0, t2 = 0.0, c = 0.0;
            for (int i = 0; i < d; ++i) {
                t1 += (xhat[i] - mu0) * (xhat[i] - mu0);
                t2 += (xhat[i] - mu1) * (xhat[i] - mu1);
                c += std::cos(2.0 * M_PI * z[i]);
            }
            return std::min(t1, static_cast<double>(d) + s24 * t2) +
                   10.0 * (d - c) + 1.0e4 * f_pen(x);
        }
        default:
            throw UnknownFunction("evaluate: invalid function id");
    }
}

}  // namespace qde
