#pragma once

#include <optional>
#include <vector>

#include "nlcap/nsbox.hpp"

namespace nlcap {

constexpr double kLn2 = 0.6931471805599453094;

struct ChannelCapacityResult {
  double capacity_bits = 0;   // achievable-rate estimate at the maximizer
  InputDist maximizer;
  double spread_bits = 0;     // upper-lower capacity estimate spread at stop
  int iterations = 0;
};

// Capacity of the discrete channel given by `rows` (nx stochastic rows of
// length ny, x-major) via Blahut-Arimoto. Stops when the standard
// upper/lower capacity estimate spread drops below `tol_bits`. An optional
// strictly positive starting distribution warm-starts the iteration.
ChannelCapacityResult channel_capacity(const std::vector<double>& rows, int nx,
                                       int ny, double tol_bits,
                                       const std::optional<InputDist>& start = {},
                                       int max_iters = 200000);

// Mutual information I(X;Y) in nats for the same row layout.
double mutual_information_nats(const std::vector<double>& rows, int nx, int ny,
                               const InputDist& px);

}  // namespace nlcap
