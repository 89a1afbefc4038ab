#include "unmix/sign_correction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "unmix/amuse.hpp"
#include "unmix/errors.hpp"

namespace unmix {

std::string to_string(SignRule rule) {
  switch (rule) {
    case SignRule::BothAboveBaseline: return "both-above-baseline";
    case SignRule::PositiveDominant: return "positive-dominant";
    case SignRule::BothBelowBaseline: return "both-below-baseline";
    case SignRule::NegativeDominant: return "negative-dominant";
    case SignRule::Boundary: return "boundary";
  }
  return "boundary";
}

Histogram histogram(const Spectrum& s, std::size_t bins) {
  s.validate();
  if (bins < 1) throw std::invalid_argument("histogram: need at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(s.values.begin(), s.values.end());
  const double lo = *lo_it, hi = *hi_it;

  Histogram h;
  if (lo == hi) {
    // Constant spectrum: one bin holding every sample.
    h.bin_centers = {lo};
    h.counts = {s.values.size()};
    return h;
  }

  const double width = (hi - lo) / static_cast<double>(bins);
  h.bin_centers.resize(bins);
  h.counts.assign(bins, 0);
  for (std::size_t j = 0; j < bins; ++j)
    h.bin_centers[j] = lo + (static_cast<double>(j) + 0.5) * width;
  for (double v : s.values) {
    double idx = std::ceil((v - lo) / width);
    if (idx < 1.0) idx = 1.0;
    if (idx > static_cast<double>(bins)) idx = static_cast<double>(bins);
    ++h.counts[static_cast<std::size_t>(idx) - 1];
  }
  return h;
}

double baseline(const Histogram& h) {
  if (h.counts.empty()) throw std::invalid_argument("baseline: empty histogram");
  std::size_t best = 0;
  for (std::size_t j = 1; j < h.counts.size(); ++j)
    if (h.counts[j] > h.counts[best]) best = j;  // ties keep the lower center
  return h.bin_centers[best];
}

ExtremaSet find_extrema(const Spectrum& s) {
  s.validate();
  const std::vector<double>& v = s.values;
  if (v.size() < 3) throw std::invalid_argument("find_extrema: need at least 3 samples");

  ExtremaSet out;
  int last_sign = 0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double d = v[k + 1] - v[k];
    if (d == 0.0) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      const std::size_t idx = last_nonzero + 1;  // first sample of the plateau
      if (last_sign > 0)
        out.maxima.emplace_back(idx, v[idx]);
      else
        out.minima.emplace_back(idx, v[idx]);
    }
    last_sign = sign;
    last_nonzero = k;
  }

  if (out.maxima.empty() && out.minima.empty()) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    out.p_min = *lo;
    out.p_max = *hi;
    return out;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [idx, value] : out.maxima) {
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  for (const auto& [idx, value] : out.minima) {
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  out.p_min = lo;
  out.p_max = hi;
  return out;
}

SignVerdict judge_direction(double b, double p_max, double p_min) {
  if (!(p_max >= p_min)) throw std::invalid_argument("judge_direction: p_max < p_min");
  const double up = p_max - b;
  const double down = p_min - b;

  SignVerdict verdict;
  verdict.baseline = b;
  verdict.p_max = p_max;
  verdict.p_min = p_min;
  if (up > 0.0 && down > 0.0) {
    verdict.decision = SignVerdict::Decision::Keep;
    verdict.rule_fired = SignRule::BothAboveBaseline;
  } else if (up < 0.0 && down < 0.0) {
    verdict.decision = SignVerdict::Decision::Flip;
    verdict.rule_fired = SignRule::BothBelowBaseline;
  } else if (up > 0.0 && down < 0.0 && std::abs(up) > std::abs(down)) {
    verdict.decision = SignVerdict::Decision::Keep;
    verdict.rule_fired = SignRule::PositiveDominant;
  } else if (up > 0.0 && down < 0.0 && std::abs(up) < std::abs(down)) {
    verdict.decision = SignVerdict::Decision::Flip;
    verdict.rule_fired = SignRule::NegativeDominant;
  } else {
    // An exactly-zero comparison or tied magnitudes: keep.
    verdict.decision = SignVerdict::Decision::Keep;
    verdict.rule_fired = SignRule::Boundary;
  }
  return verdict;
}

UnmixingModel correct_signs(const UnmixingModel& model, std::size_t bins) {
  if (model.sources.rows() != model.n_sources || model.sources.cols() != model.grid.count)
    throw DimensionError("correct_signs: model sources do not match its grid");
  if (model.mixing_estimate.cols() != model.n_sources)
    throw DimensionError("correct_signs: mixing estimate does not match source count");

  UnmixingModel out = model;
  out.sign_verdicts.clear();
  out.sign_bins = bins;
  for (std::size_t i = 0; i < out.n_sources; ++i) {
    Spectrum s{out.grid, out.sources.row_copy(i)};
    const Histogram h = histogram(s, bins);
    const ExtremaSet extrema = find_extrema(s);
    SignVerdict verdict = judge_direction(baseline(h), extrema.p_max, extrema.p_min);
    if (verdict.decision == SignVerdict::Decision::Flip) {
      for (std::size_t k = 0; k < out.sources.cols(); ++k) out.sources(i, k) = -out.sources(i, k);
      for (std::size_t p = 0; p < out.mixing_estimate.rows(); ++p)
        out.mixing_estimate(p, i) = -out.mixing_estimate(p, i);
      for (std::size_t p = 0; p < out.rotation.rows(); ++p)
        out.rotation(p, i) = -out.rotation(p, i);
    }
    out.sign_verdicts.push_back(verdict);
  }
  return out;
}

}  // namespace unmix
