#include <chrono>
#include <cmath>
#include <map>

#include "gl2lab/errors.hpp"
#include "gl2lab/lfunc.hpp"

namespace gl2lab::lfunc {

namespace {

constexpr double kScanTarget = 1e-8;

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  Fit f;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  f.ok = true;
  return f;
}

}  // namespace

std::vector<ScanRecord> scan(std::int64_t q_min, std::int64_t q_max, std::int64_t stride, bool timing) {
  if (q_min < 3 || q_max < q_min) throw DomainError("scan needs 3 <= q_min <= q_max");
  if (stride < 1) throw DomainError("scan stride must be positive");
  std::vector<ScanRecord> out;
  for (std::int64_t q = q_min; q <= q_max; q += stride) {
    if (count_primitive(q) == 0) continue;
    const auto start = std::chrono::steady_clock::now();
    ScanRecord rec;
    rec.q = q;
    rec.abs_L = -1.0;
    for_each_character(q, true, [&rec](const DirichletCharacter& chi) {
      const double v = std::abs(l_central(chi, kScanTarget).value);
      if (v > rec.abs_L) {
        rec.abs_L = v;
        rec.label = chi.label;
      }
    });
    rec.normalized = rec.abs_L / std::pow(static_cast<double>(q), 0.25);
    if (timing) {
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

Fit exponent_fit(std::span<const ScanRecord> records) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    if (!(r.abs_L > 0.0)) continue;
    x.push_back(std::log(static_cast<double>(r.q)));
    y.push_back(std::log(r.abs_L));
  }
  return least_squares(x, y);
}

Fit block_maxima_fit(std::span<const ScanRecord> records) {
  std::map<int, const ScanRecord*> best;
  for (const auto& r : records) {
    if (!(r.normalized > 0.0)) continue;
    const int block = static_cast<int>(std::floor(std::log2(static_cast<double>(r.q))));
    auto it = best.find(block);
    if (it == best.end() || r.normalized > it->second->normalized) best[block] = &r;
  }
  std::vector<double> x, y;
  for (const auto& [block, r] : best) {
    x.push_back(std::log(static_cast<double>(r->q)));
    y.push_back(std::log(r->normalized));
  }
  return least_squares(x, y);
}

}  // namespace gl2lab::lfunc
