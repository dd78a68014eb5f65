#include "imbalab/bounds.hpp"

#include <cmath>
#include <vector>

#include "imbalab/errors.hpp"
#include "imbalab/holder.hpp"
#include "imbalab/text.hpp"

namespace imbalab {

std::string_view to_string(Band band) {
  switch (band) {
    case Band::superior: return "SUPERIOR";
    case Band::indeterminate: return "INDETERMINATE";
    case Band::inferior: return "INFERIOR";
  }
  return "UNKNOWN";
}

double s_sup(std::size_t k, double p) {
  if (k < 2) throw DomainError("s_sup: K must be at least 2");
  // One recall at chance level, the rest perfect.
  std::vector<double> recalls(k, 1.0);
  recalls[0] = 1.0 / static_cast<double>(k);
  return holder_mean(recalls, HolderSpec::uniform(k, p));
}

double s_inf(std::size_t k) {
  if (k < 2) throw DomainError("s_inf: K must be at least 2");
  return 1.0 / static_cast<double>(k);
}

CompetitivenessVerdict verdict(double value, std::size_t k, double p) {
  if (!(value >= 0.0 && value <= 1.0)) throw DomainError("verdict: score value must lie in [0, 1]");
  const double sup = s_sup(k, p);
  const double inf = s_inf(k);
  Band band = Band::indeterminate;
  if (value >= sup) band = Band::superior;
  else if (value < inf) band = Band::inferior;
  return {band, sup, inf, p, k};
}

std::vector<BoundsRow> bounds_table(std::size_t k, const std::vector<double>& exponents) {
  std::vector<BoundsRow> rows;
  rows.reserve(exponents.size());
  for (double p : exponents) rows.push_back({p, s_inf(k), s_sup(k, p)});
  return rows;
}

std::string format_bounds_csv(std::size_t k, const std::vector<BoundsRow>& rows) {
  std::string out = "K,p,s_inf,s_sup\n";
  for (const auto& r : rows) {
    out += std::to_string(k) + "," + text::format_double(r.p) + "," + text::format_double(r.s_inf) + "," +
           text::format_double(r.s_sup) + "\n";
  }
  return out;
}

}  // namespace imbalab
