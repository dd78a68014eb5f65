#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace imbalab {

// Competitiveness of a classifier against the uniformly random one, judged from
// a single unweighted power mean of its recalls.

enum class Band { superior, indeterminate, inferior };

std::string_view to_string(Band band);

struct CompetitivenessVerdict {
  Band band;
  double s_sup;
  double s_inf;
  double p;
  std::size_t k;
};

/// Smallest mean value that still guarantees every recall exceeds 1/K: the
/// power mean of (1/K, 1, ..., 1). Throws DomainError for K < 2 or NaN p.
double s_sup(std::size_t k, double p);

/// Score of the random classifier, 1/K.
double s_inf(std::size_t k);

/// SUPERIOR when value >= s_sup, INFERIOR when value < s_inf, else INDETERMINATE.
/// Throws DomainError when value is outside [0, 1].
CompetitivenessVerdict verdict(double value, std::size_t k, double p);

struct BoundsRow {
  double p;
  double s_inf;
  double s_sup;
};

std::vector<BoundsRow> bounds_table(std::size_t k, const std::vector<double>& exponents);

/// CSV with columns K,p,s_inf,s_sup.
std::string format_bounds_csv(std::size_t k, const std::vector<BoundsRow>& rows);

}  // namespace imbalab
