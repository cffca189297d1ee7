#include "nsfts/metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nsfts/errors.hpp"

namespace nsfts {

namespace {

void check_pair(std::span<const double> y, std::span<const double> yhat, const char* what) {
  if (y.size() != yhat.size()) {
    throw PreconditionError(std::string(what) + ": length mismatch (" + std::to_string(y.size()) +
                            " vs " + std::to_string(yhat.size()) + ")");
  }
  if (y.empty()) throw PreconditionError(std::string(what) + ": empty input");
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

double rmse(std::span<const double> y, std::span<const double> yhat) {
  check_pair(y, yhat, "rmse");
  return std::sqrt(sum_sq_diff(y, yhat) / static_cast<double>(y.size()));
}

MapeResult mape(std::span<const double> y, std::span<const double> yhat, bool percent) {
  check_pair(y, yhat, "mape");
  MapeResult r;
  double s = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) {
      ++r.skipped;
      continue;
    }
    s += std::abs((y[i] - yhat[i]) / y[i]);
    ++used;
  }
  if (used == 0) throw PreconditionError("mape: every target is zero");
  r.value = s / static_cast<double>(used) * (percent ? 100.0 : 1.0);
  return r;
}

double theil_u1(std::span<const double> y, std::span<const double> yhat) {
  check_pair(y, yhat, "theil_u1");
  double sy = 0.0;
  double sf = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sy += y[i] * y[i];
    sf += yhat[i] * yhat[i];
  }
  const double denom = std::sqrt(sy) + std::sqrt(sf);
  if (denom == 0.0) throw PreconditionError("theil_u1: all-zero inputs");
  return std::sqrt(sum_sq_diff(y, yhat)) / denom;
}

double theil_u2(std::span<const double> y, std::span<const double> yhat) {
  check_pair(y, yhat, "theil_u2");
  if (y.size() < 2) throw PreconditionError("theil_u2: needs at least 2 points");
  const auto target = y.subspan(1);
  const double naive = rmse(target, y.first(y.size() - 1));
  if (naive == 0.0) throw PreconditionError("theil_u2: constant series (naive RMSE is 0)");
  return rmse(target, yhat.subspan(1)) / naive;
}

MetricReport score(std::span<const double> target, std::span<const double> forecast,
                   std::span<const double> naive, std::span<const std::uint8_t> flagged, bool mape_percent) {
  if (forecast.size() != target.size() || naive.size() != target.size() ||
      flagged.size() != target.size()) {
    throw PreconditionError("score: inputs must be aligned");
  }
  std::vector<double> y;
  std::vector<double> f;
  std::vector<double> nv;
  MetricReport r;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (flagged[i]) {
      ++r.skipped;
      continue;
    }
    y.push_back(target[i]);
    f.push_back(forecast[i]);
    nv.push_back(naive[i]);
  }
  r.n = y.size();
  if (r.n == 0) throw PreconditionError("score: every pair is flagged; nothing to score");

  r.rmse = rmse(y, f);
  const MapeResult m = mape(y, f, mape_percent);
  r.mape = m.value;
  r.mape_zero_targets = m.skipped;
  r.u1 = theil_u1(y, f);
  const double naive_rmse = rmse(y, nv);
  if (naive_rmse == 0.0) throw PreconditionError("score: naive RMSE is 0; U2 undefined");
  r.u2 = r.rmse / naive_rmse;
  return r;
}

}  // namespace nsfts
