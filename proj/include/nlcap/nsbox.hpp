#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlcap/errors.hpp"

namespace nlcap {

// Counts of settings (A, B) and outcomes (R, S) for the two parties.
struct BoxShape {
  int A = 1;  // Alice settings
  int B = 1;  // Bob settings
  int R = 1;  // Alice outcomes
  int S = 1;  // Bob outcomes

  bool operator==(const BoxShape&) const = default;

  std::size_t entries() const {
    return static_cast<std::size_t>(R) * S * A * B;
  }

  // Row-major layout with index order (r, s, a, b); pinned by the file format.
  std::size_t idx(int r, int s, int a, int b) const {
    return ((static_cast<std::size_t>(r) * S + s) * A + a) * B + b;
  }

  void validate() const {
    if (A < 1 || B < 1 || R < 1 || S < 1)
      throw InvalidInput("BoxShape: all counts must be >= 1");
  }

  std::string str() const;
};

// Dimension of the affine subspace spanned by nonsignaling boxes:
// A*B*(R-1)*(S-1) + A*(R-1) + B*(S-1).
long long ns_dimension(const BoxShape& shape);

// Mixed-radix packing of outcome sequences (s_1, ..., s_B), s_1 least
// significant. The same encoding serves Alice sequences over (R, A).
struct SequenceIndex {
  // S^B, guarded against overflow.
  static std::size_t count(int S, int B);
  static std::size_t encode(const std::vector<int>& seq, int S);
  static std::vector<int> decode(std::size_t packed, int S, int B);
};

// Digit table for all sequences of length B over S symbols; used by the
// solver's hot loops instead of repeated div/mod.
class SeqTable {
 public:
  SeqTable() = default;
  SeqTable(int S, int B);

  int S() const { return s_; }
  int B() const { return b_; }
  std::size_t size() const { return n_; }
  // b-th element of sequence k.
  int digit(std::size_t k, int b) const { return digits_[k * b_ + b]; }

 private:
  int s_ = 0, b_ = 0;
  std::size_t n_ = 0;
  std::vector<int> digits_;
};

// Probability distribution over Alice's settings.
struct InputDist {
  std::vector<double> p;

  static InputDist uniform(int A);
  int size() const { return static_cast<int>(p.size()); }
  void validate() const;  // entries >= 0, sum 1 within 1e-12
};

// A validated nonsignaling box P(r,s|a,b). Immutable after construction.
class NSBox {
 public:
  static constexpr double kDefaultTol = 1e-9;

  const BoxShape& shape() const { return shape_; }
  double tol() const { return tol_; }
  const std::vector<double>& p() const { return p_; }

  double at(int r, int s, int a, int b) const {
    return p_[shape_.idx(r, s, a, b)];
  }
  // Marginals P(r|a,b) and P(s|a,b).
  double marginal_r(int r, int a, int b) const;
  double marginal_s(int s, int a, int b) const;

  // Returns the box with outcome/setting labels permuted. Each permutation
  // vector may be empty (identity) or a permutation of the respective range.
  NSBox relabeled(const std::vector<int>& perm_r, const std::vector<int>& perm_s,
                  const std::vector<int>& perm_a,
                  const std::vector<int>& perm_b) const;

 private:
  friend NSBox validate_nsbox(std::vector<double> p, const BoxShape& shape,
                              double tol);
  NSBox(BoxShape shape, std::vector<double> p, double tol)
      : shape_(shape), p_(std::move(p)), tol_(tol) {}

  BoxShape shape_;
  std::vector<double> p_;
  double tol_;
};

// Non-throwing validation probe; lists the worst violated constraint.
struct BoxReport {
  bool ok = false;
  std::string worst;      // description of the worst violated constraint
  double residual = 0.0;  // its residual
};
BoxReport probe_nsbox(const std::vector<double>& p, const BoxShape& shape,
                      double tol = NSBox::kDefaultTol);

// Validates normalization, nonnegativity, and both nonsignaling families.
// Entries in [-tol, 0) are clamped to zero and each (a,b) block renormalized.
// Throws NotNormalized / Signaling / NegativeEntry naming the offending
// index tuple.
NSBox validate_nsbox(std::vector<double> p, const BoxShape& shape,
                     double tol = NSBox::kDefaultTol);

// Joint extension rho(r, s-sequence | a), the variable of the capacity
// problem. Layout is row-major (r, packed sequence, a).
struct JointExtension {
  BoxShape shape;
  std::vector<double> rho;  // size R * S^B * A

  static constexpr std::size_t kMaxEntries = std::size_t{1} << 28;

  // Allocates a zero extension; throws ExtensionTooLarge past the guard.
  static JointExtension zeros(const BoxShape& shape);
  // Entry count R * S^B * A with the overflow/memory guard applied.
  static std::size_t guarded_size(const BoxShape& shape);

  std::size_t seq_count() const { return SequenceIndex::count(shape.S, shape.B); }
  std::size_t idx(int r, std::size_t seq, int a) const {
    return (static_cast<std::size_t>(r) * seq_count() + seq) * shape.A + a;
  }
  double at(int r, std::size_t seq, int a) const { return rho[idx(r, seq, a)]; }

  // Per-a normalization check (sum over r and sequences equals 1 within tol).
  void validate(double tol = 1e-9) const;
};

// max over (a,b,r,s) of | sum_{seq: seq_b = s} rho(r,seq|a) - P(r,s|a,b) |.
double extension_residual(const JointExtension& ext, const NSBox& box);

// --- small preset boxes used across tests and the CLI -----------------------

// PR box on shape (2,2,2,2): p(r,s|a,b) = 1/2 * [r xor s == a*b].
NSBox pr_box();
// Uniform box p = 1/(R*S).
NSBox uniform_box(const BoxShape& shape);
// Deterministic local vertex given outcome sequences for both parties.
NSBox vertex_box(const BoxShape& shape, const std::vector<int>& r_of_a,
                 const std::vector<int>& s_of_b);

}  // namespace nlcap
