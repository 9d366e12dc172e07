#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace qde {

// Location/spread summary of one algorithm x function cell.
struct CellStats {
    double median = 0.0;
    double sigma = 0.0;  // population standard deviation (divide by N)
    double mean = 0.0;
    std::size_t count = 0;
};

// Median (even count: mean of the central pair), population sigma, and mean
// of the given values. Throws EmptyCell on an empty input.
CellStats aggregate_cell(const std::vector<double>& values);

// Smallest index g such that |trace[t] - trace[g]| <= tolerance for every
// t >= g: the generation after which the best fitness never changed again.
// For a non-increasing trace and tolerance 0 this is the first occurrence of
// the final value. Throws EmptyCell on an empty trace.
int convergence_generation(const std::vector<double>& trace,
                           double tolerance = 0.0);

struct FriedmanResult {
    double statistic = 0.0;  // chi-squared statistic over the rank sums
    int k = 0;               // treatments (algorithms)
    int n = 0;               // blocks (functions)
    double p_value = 1.0;    // chi-squared(k-1) upper tail
    std::vector<double> mean_ranks;  // per treatment, averaged over blocks
};

// Friedman rank test on an n x k matrix (rows = blocks, columns =
// treatments). Within each block, treatments are ranked 1..k (ties get
// average ranks); rank 1 is the lowest value when lower_is_better, the
// highest otherwise. Throws DegenerateInput when n < 2 or k < 2, or on
// ragged rows.
FriedmanResult friedman(const std::vector<std::vector<double>>& matrix,
                        bool lower_is_better = true);

struct NemenyiResult {
    double critical_difference = 0.0;
    double alpha = 0.05;
    // Symmetric, false diagonal: pair (a, b) significant iff the mean-rank
    // gap exceeds the critical difference.
    std::vector<std::vector<bool>> pairwise_significant;
};

// Post-hoc pairwise comparison at level alpha (0.05 or 0.10; embedded
// critical-value table covers k = 2..20). CD = q_alpha * sqrt(k(k+1)/(6n)).
// Throws UnsupportedAlpha / KOutOfTable.
NemenyiResult nemenyi(const FriedmanResult& fr, double alpha = 0.05);

// Treatments sorted by mean rank plus the maximal groups of mutually
// non-significant treatments (the horizontal bars of a critical-difference
// diagram). cliques are [first, last] index ranges into `order`.
struct CdDiagramData {
    std::vector<int> order;             // treatment indices, best rank first
    std::vector<double> sorted_ranks;   // mean ranks in the same order
    std::vector<std::pair<int, int>> cliques;
    double critical_difference = 0.0;
};

CdDiagramData cd_diagram_data(const FriedmanResult& fr,
                              const NemenyiResult& nem);

}  // namespace qde
