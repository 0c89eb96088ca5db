#pragma once

#include <map>
#include <string>
#include <vector>

#include "jacsums/hsums.hpp"
#include "jacsums/jacobiforms.hpp"

namespace jacsums {

struct PeterssonJob {
    int k = 4;              // even weight >= 4
    IndexData index;
    int64_t level = 1;      // N; the c-sum runs over N | c
    int64_t c_max = 1000;
};

// Truncated geometric side: value with roundoff bound plus a rigorous
// bound on the discarded c > c_max contribution.
struct TruncatedSide {
    cx value{1.0, 0.0};
    double err = 0.0;
    double tail = 0.0;
    bool empty_sum = false; // c_max < level: no terms at all
};

// Gamma(k - 3/2) / (4 pi^(k-3/2)) * m^(k-2) * |D|^(3/2-k).
double lambda_km(int k, int64_t m, int64_t D);

// Precomputed H values for c = level, 2*level, ..., <= c_max; reusable
// across weights k since H does not depend on k.
struct HSeriesEntry {
    int64_t c;
    cx plus, minus;
    double err_plus, err_minus;
};
std::vector<HSeriesEntry> h_series(const IndexData& index, int64_t level, int64_t c_max);

// Bare series sum_{N|c<=C} c^-3/2 sum_± H± e(±r^2/2mc) J_{k-3/2}(pi|D|/mc)
// (no prefactor, no leading 1); this is what level-averaging reuses.
struct SeriesSum {
    cx value{0.0, 0.0};
    double err = 0.0;
};
SeriesSum bare_series(const PeterssonJob& job, const std::vector<HSeriesEntry>& entries);

// Rigorous bound on |prefactor * sum_{N|c > c_max} ...| from the Bessel
// power bound and the explicit Weil bound (fundamental-D form).
double series_tail_bound(int k, int64_t m, int64_t D, int64_t level, int64_t c_max);

TruncatedSide geometric_side(const PeterssonJob& job);
TruncatedSide geometric_side_from(const PeterssonJob& job,
                                  const std::vector<HSeriesEntry>& entries);

// Dimension facts for J^cusp_{k,m}, read from a "k,m,dim" data file.
std::map<std::pair<int, int>, int> load_dimension_table(const std::string& path);
std::string default_dimension_file();

struct SampleReport {
    IndexData index;
    double value_abs = 0.0;
    double tail = 0.0;
    double err = 0.0;
    double margin = 0.0; // tolerance + tail + err - |value|
    bool pass = false;
    std::string note;
};

struct CheckReport {
    int k = 0;
    bool pass = true;
    std::vector<SampleReport> samples;
};

// For (k, 1) with dim J^cusp_{k,1} = 0: |value| <= tail + tolerance.
CheckReport zero_dim_check(int k, const std::vector<std::pair<int64_t, int64_t>>& samples,
                           int64_t c_max, double tolerance,
                           const std::string& dim_file = default_dimension_file());

struct RatioReport {
    IndexData first, second;
    double lhs = 0.0; // [RHS1/lambda(D1)] / [RHS2/lambda(D2)]
    double rhs = 0.0; // |c(n1,r1)|^2 / |c(n2,r2)|^2
    double rel_tol = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

struct RatioCheckReport {
    int k = 0;
    bool pass = true;
    std::vector<RatioReport> pairs;
};

// For one-dimensional (k, 1): geometric-side ratios against exact
// coefficient tables; the unknown Petersson norm cancels.
RatioCheckReport ratio_check(
    int k,
    const std::vector<std::pair<std::pair<int64_t, int64_t>, std::pair<int64_t, int64_t>>>& pairs,
    int64_t c_max, const std::string& dim_file = default_dimension_file());

} // namespace jacsums
