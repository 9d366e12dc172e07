#include "qde/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "qde/errors.hpp"

namespace qde {

CellStats aggregate_cell(const std::vector<double>& values) {
    if (values.empty()) throw EmptyCell("aggregate_cell: no records");
    CellStats cs;
    cs.count = values.size();

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    cs.median = n % 2 == 1 ? sorted[n / 2]
                           : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    cs.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : sorted) ss += (v - cs.mean) * (v - cs.mean);
    cs.sigma = std::sqrt(ss / n);
    return cs;
}

int convergence_generation(const std::vector<double>& trace,
                           double tolerance) {
    if (trace.empty()) throw EmptyCell("convergence_generation: empty trace");
    const int n = static_cast<int>(trace.size());
    for (int g = 0; g < n; ++g) {
        bool settled = true;
        for (int t = g + 1; t < n; ++t) {
            if (std::abs(trace[t] - trace[g]) > tolerance) {
                settled = false;
                break;
            }
        }
        if (settled) return g;
    }
    return n - 1;  // unreachable: g = n-1 always settles
}

namespace {

// Within-block ranks with average-rank tie handling; rank 1 = best.
std::vector<double> rank_block(const std::vector<double>& row,
                               bool lower_is_better) {
    const int k = static_cast<int>(row.size());
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return lower_is_better ? row[a] < row[b] : row[a] > row[b];
    });
    std::vector<double> ranks(k, 0.0);
    int i = 0;
    while (i < k) {
        int j = i;
        while (j + 1 < k && row[idx[j + 1]] == row[idx[i]]) ++j;
        const double avg = 0.5 * (i + j) + 1.0;  // mean of ranks i+1..j+1
        for (int t = i; t <= j; ++t) ranks[idx[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

FriedmanResult friedman(const std::vector<std::vector<double>>& matrix,
                        bool lower_is_better) {
    const int n = static_cast<int>(matrix.size());
    if (n < 2) throw DegenerateInput("friedman: needs at least 2 blocks");
    const int k = static_cast<int>(matrix.front().size());
    if (k < 2) throw DegenerateInput("friedman: needs at least 2 treatments");
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != k)
            throw DegenerateInput("friedman: ragged matrix");

    FriedmanResult fr;
    fr.k = k;
    fr.n = n;
    fr.mean_ranks.assign(k, 0.0);
    for (const auto& row : matrix) {
        const auto ranks = rank_block(row, lower_is_better);
        for (int j = 0; j < k; ++j) fr.mean_ranks[j] += ranks[j];
    }
    for (double& r : fr.mean_ranks) r /= n;

    const double mid = (k + 1) / 2.0;
    double s = 0.0;
    for (double r : fr.mean_ranks) s += (r - mid) * (r - mid);
    fr.statistic = 12.0 * n / (k * (k + 1.0)) * s;

    const boost::math::chi_squared dist(k - 1);
    fr.p_value = boost::math::cdf(boost::math::complement(
        dist, std::max(0.0, fr.statistic)));
    return fr;
}

namespace {

// Critical values q_alpha(k) for the mean-rank pairwise comparison,
// k = 2..20: upper quantiles of the studentized range at infinite degrees
// of freedom, divided by sqrt(2). Computed offline; frozen to 10 decimals.
constexpr double kQ005[] = {
    1.9599639845, 2.3437005864, 2.5690317725, 2.7277743709, 2.8497054196,
    2.9483200175, 3.0308784496, 3.1017303413, 3.1636835771, 3.2186536073,
    3.2680039245, 3.3127385934, 3.3536177519, 3.3912302838, 3.4260413794,
    3.4584247073, 3.4886847994, 3.5170730087, 3.5437991315};
constexpr double kQ010[] = {
    1.6448536270, 2.0522927305, 2.2913414969, 2.4595157643, 2.5885206019,
    2.6927321010, 2.7798836082, 2.8546064312, 2.9198888401, 2.9777682513,
    3.0296941832, 3.0767334683, 3.1196933331, 3.1591988189, 3.1957434330,
    3.2297234009, 3.2614614896, 3.2912239866, 3.3192330595};

}  // namespace

NemenyiResult nemenyi(const FriedmanResult& fr, double alpha) {
    const double* table = nullptr;
    if (alpha == 0.05) table = kQ005;
    else if (alpha == 0.10) table = kQ010;
    else
        throw UnsupportedAlpha(
            "nemenyi: embedded table covers alpha = 0.05 and 0.10, got " +
            std::to_string(alpha));
    if (fr.k < 2 || fr.k > 20)
        throw KOutOfTable("nemenyi: embedded table covers k = 2..20, got " +
                          std::to_string(fr.k));

    NemenyiResult nr;
    nr.alpha = alpha;
    const double q = table[fr.k - 2];
    nr.critical_difference =
        q * std::sqrt(fr.k * (fr.k + 1.0) / (6.0 * fr.n));
    nr.pairwise_significant.assign(fr.k, std::vector<bool>(fr.k, false));
    for (int a = 0; a < fr.k; ++a)
        for (int b = 0; b < fr.k; ++b)
            nr.pairwise_significant[a][b] =
                a != b && std::abs(fr.mean_ranks[a] - fr.mean_ranks[b]) >
                              nr.critical_difference;
    return nr;
}

CdDiagramData cd_diagram_data(const FriedmanResult& fr,
                              const NemenyiResult& nem) {
    CdDiagramData cd;
    cd.critical_difference = nem.critical_difference;
    const int k = fr.k;
    cd.order.resize(k);
    std::iota(cd.order.begin(), cd.order.end(), 0);
    std::sort(cd.order.begin(), cd.order.end(), [&](int a, int b) {
        if (fr.mean_ranks[a] != fr.mean_ranks[b])
            return fr.mean_ranks[a] < fr.mean_ranks[b];
        return a < b;  // stable tie order
    });
    cd.sorted_ranks.resize(k);
    for (int i = 0; i < k; ++i) cd.sorted_ranks[i] = fr.mean_ranks[cd.order[i]];

    // Maximal consecutive segments whose rank span stays within the CD;
    // within such a segment every pair is mutually non-significant.
    for (int i = 0; i < k; ++i) {
        int j = i;
        while (j + 1 < k && cd.sorted_ranks[j + 1] - cd.sorted_ranks[i] <=
                                nem.critical_difference)
            ++j;
        const bool contained =
            !cd.cliques.empty() && cd.cliques.back().second >= j;
        if (!contained) cd.cliques.emplace_back(i, j);
    }
    return cd;
}

}  // namespace qde
