#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nlcap/channel.hpp"
#include "nlcap/nsbox.hpp"

namespace nlcap {

struct SolverConfig {
  double gap_tol = 1e-6;       // duality-gap stop threshold, bits
  int max_outer_iters = 50000;
  double newton_tol = 1e-11;   // residual max-norm of the multiplier equations
  int newton_max_iters = 200;
  std::optional<InputDist> fixed_input_dist;  // set: solve with fixed rho(a)
  std::uint64_t init_seed = 0;  // nonzero: random perturbation of the start
  bool record_trace = false;

  void validate() const {
    if (gap_tol <= 0 || newton_tol <= 0)
      throw InvalidInput("SolverConfig: tolerances must be positive");
  }
};

// Auxiliary distribution R(r, s-sequence | a); same layout as JointExtension.
struct AuxDistribution {
  BoxShape shape;
  std::vector<double> r;

  std::size_t seq_count() const { return SequenceIndex::count(shape.S, shape.B); }
  std::size_t idx(int rr, std::size_t seq, int a) const {
    return (static_cast<std::size_t>(rr) * seq_count() + seq) * shape.A + a;
  }
  // per-a normalization and the cross-a marginal constraint, both within tol
  void validate(double tol = 1e-9) const;
};

// Feasible point of the dual problem: multipliers lambda(r,s,a,b) (nats)
// paired with an input distribution. `shift_applied` records the constant
// added per entry (K/B) to reach feasibility.
struct DualWitness {
  BoxShape shape;
  std::vector<double> lambda;  // (r,s,a,b) layout, natural-log units
  InputDist input_dist;
  double shift_applied = 0;    // K_lambda, nats

  double at(int r, int s, int a, int b) const {
    return lambda[shape.idx(r, s, a, b)];
  }
};

struct IterRecord {
  double primal_bits;  // channel-capacity value of the current extension
  double dual_bits;    // lower bound from the iteration's multipliers
};

struct SolverResult {
  double capacity = 0;     // bits; best primal value at termination
  double lower_bound = 0;  // bits; best certified dual bound
  double gap = 0;          // capacity - lower_bound
  DualWitness witness;
  JointExtension extension;
  int iterations = 0;
  bool converged = false;
  std::vector<IterRecord> trace;  // populated when cfg.record_trace
};

// R(r,seq|a) = rho(r,seq|a) * rho(seq) / rho(seq|a) with
// rho(seq) = sum_a rho(seq|a) rho(a). Sequences unsupported under some a get
// their slice of rho(seq) spread uniformly over r, which keeps the cross-a
// constraint exact without touching the objective.
AuxDistribution update_aux(const JointExtension& ext, const InputDist& input);

// Solves the per-(r,a) multiplier equations
//   sum_{seq: seq_b = s} R(r,seq|a) exp(sum_b' lambda(r,seq_b',a,b')) = P(r,s|a,b)
// by damped Newton ascent on the concave dual functional. Entries of P that
// are exactly zero are eliminated; their multipliers are pinned at a large
// negative sentinel. Throws NewtonDiverged with the last residual.
std::vector<double> solve_lambda(const AuxDistribution& aux, const NSBox& box,
                                 const SolverConfig& cfg,
                                 const std::vector<double>* warm = nullptr);

// rho(r,seq|a) = R(r,seq|a) * exp(sum_b lambda(r,seq_b,a,b)).
JointExtension update_extension(const AuxDistribution& aux,
                                const std::vector<double>& lambda);

// K_lambda = -log max_seq sum_a rho(a) max_r exp(sum_b lambda(r,seq_b,a,b));
// returns the certified bound (linear term + K_lambda) in bits. Valid for
// any finite lambda by weak duality.
double dual_lower_bound(const DualWitness& witness, const NSBox& box);

// max_seq [ sum_a rho(a) max_r exp(sum_b lambda) ] - 1; feasible points are
// <= ~1e-15 after the K/B shift.
double witness_feasibility_residual(const DualWitness& witness);

// Algorithm: alternate channel-capacity maximization over rho(a), the
// closed-form update of R, the Newton multiplier solve, and the extension
// update, until the duality gap drops below cfg.gap_tol. With
// cfg.fixed_input_dist set the rho(a) step is skipped and the result is a
// lower bound on the capacity.
SolverResult nonlocal_capacity(const NSBox& box, const SolverConfig& cfg = {});

}  // namespace nlcap
