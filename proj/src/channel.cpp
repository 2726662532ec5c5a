#include "nlcap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nlcap {

namespace {

void check_stochastic(const std::vector<double>& rows, int nx, int ny) {
  if (rows.size() != static_cast<std::size_t>(nx) * ny)
    throw ShapeMismatch("channel matrix size mismatch");
  for (int x = 0; x < nx; ++x) {
    double sum = 0;
    for (int y = 0; y < ny; ++y) {
      const double v = rows[static_cast<std::size_t>(x) * ny + y];
      if (v < -1e-12)
        throw NonstochasticChannel("negative channel entry at row " +
                                   std::to_string(x));
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw NonstochasticChannel("channel row " + std::to_string(x) +
                                 " sums to " + std::to_string(sum));
  }
}

}  // namespace

double mutual_information_nats(const std::vector<double>& rows, int nx, int ny,
                               const InputDist& px) {
  std::vector<double> q(ny, 0.0);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      q[y] += px.p[x] * rows[static_cast<std::size_t>(x) * ny + y];
  double info = 0;
  for (int x = 0; x < nx; ++x) {
    if (px.p[x] <= 0) continue;
    for (int y = 0; y < ny; ++y) {
      const double v = rows[static_cast<std::size_t>(x) * ny + y];
      if (v > 0) info += px.p[x] * v * std::log(v / q[y]);
    }
  }
  return info;
}

ChannelCapacityResult channel_capacity(const std::vector<double>& rows, int nx,
                                       int ny, double tol_bits,
                                       const std::optional<InputDist>& start,
                                       int max_iters) {
  check_stochastic(rows, nx, ny);
  InputDist px = start.value_or(InputDist::uniform(nx));
  if (px.size() != nx) throw ShapeMismatch("start distribution length mismatch");
  // Multiplicative updates never revive a zero weight; start strictly inside.
  for (double& v : px.p) v = std::max(v, 1e-12);
  {
    double s = 0;
    for (double v : px.p) s += v;
    for (double& v : px.p) v /= s;
  }

  const double tol_nats = tol_bits * kLn2;
  std::vector<double> q(ny), d(nx);
  ChannelCapacityResult res;
  double lower = 0, upper = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iters; ++it) {
    std::fill(q.begin(), q.end(), 0.0);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y)
        q[y] += px.p[x] * rows[static_cast<std::size_t>(x) * ny + y];
    double dmax = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < nx; ++x) {
      double kl = 0;
      for (int y = 0; y < ny; ++y) {
        const double v = rows[static_cast<std::size_t>(x) * ny + y];
        if (v > 0) kl += v * std::log(v / q[y]);
      }
      d[x] = kl;
      dmax = std::max(dmax, kl);
    }
    double rate = 0;
    for (int x = 0; x < nx; ++x) rate += px.p[x] * d[x];
    lower = rate;
    upper = dmax;
    res.iterations = it;
    if (upper - lower < tol_nats) break;
    double norm = 0;
    for (int x = 0; x < nx; ++x) {
      px.p[x] *= std::exp(d[x] - dmax);  // shift by dmax for stability
      norm += px.p[x];
    }
    for (int x = 0; x < nx; ++x) px.p[x] /= norm;
  }
  res.capacity_bits = lower / kLn2;
  res.spread_bits = (upper - lower) / kLn2;
  res.maximizer = px;
  return res;
}

}  // namespace nlcap
