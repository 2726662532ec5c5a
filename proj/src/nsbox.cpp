#include "nlcap/nsbox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace nlcap {

std::string BoxShape::str() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%dx%dx%dx%d", A, B, R, S);
  return buf;
}

long long ns_dimension(const BoxShape& shape) {
  const long long A = shape.A, B = shape.B, R = shape.R, S = shape.S;
  return A * B * (R - 1) * (S - 1) + A * (R - 1) + B * (S - 1);
}

std::size_t SequenceIndex::count(int S, int B) {
  std::size_t n = 1;
  for (int b = 0; b < B; ++b) {
    if (n > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(S))
      throw ExtensionTooLarge("sequence count S^B overflows size_t");
    n *= static_cast<std::size_t>(S);
  }
  return n;
}

std::size_t SequenceIndex::encode(const std::vector<int>& seq, int S) {
  std::size_t packed = 0;
  std::size_t stride = 1;
  for (int v : seq) {
    packed += stride * static_cast<std::size_t>(v);
    stride *= static_cast<std::size_t>(S);
  }
  return packed;
}

std::vector<int> SequenceIndex::decode(std::size_t packed, int S, int B) {
  std::vector<int> seq(B);
  for (int b = 0; b < B; ++b) {
    seq[b] = static_cast<int>(packed % S);
    packed /= S;
  }
  return seq;
}

SeqTable::SeqTable(int S, int B) : s_(S), b_(B), n_(SequenceIndex::count(S, B)) {
  digits_.resize(n_ * static_cast<std::size_t>(B));
  std::vector<int> digits(B, 0);
  for (std::size_t k = 0; k < n_; ++k) {
    for (int b = 0; b < B; ++b) digits_[k * B + b] = digits[b];
    for (int b = 0; b < B; ++b) {  // odometer advance
      if (++digits[b] < S) break;
      digits[b] = 0;
    }
  }
}

InputDist InputDist::uniform(int A) {
  InputDist d;
  d.p.assign(A, 1.0 / A);
  return d;
}

void InputDist::validate() const {
  double sum = 0;
  for (double v : p) {
    if (v < 0) throw InvalidInput("InputDist: negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidInput("InputDist: entries sum to " + std::to_string(sum));
}

double NSBox::marginal_r(int r, int a, int b) const {
  double m = 0;
  for (int s = 0; s < shape_.S; ++s) m += at(r, s, a, b);
  return m;
}

double NSBox::marginal_s(int s, int a, int b) const {
  double m = 0;
  for (int r = 0; r < shape_.R; ++r) m += at(r, s, a, b);
  return m;
}

NSBox NSBox::relabeled(const std::vector<int>& perm_r,
                       const std::vector<int>& perm_s,
                       const std::vector<int>& perm_a,
                       const std::vector<int>& perm_b) const {
  auto apply = [](const std::vector<int>& perm, int i) {
    return perm.empty() ? i : perm[i];
  };
  std::vector<double> q(p_.size());
  for (int r = 0; r < shape_.R; ++r)
    for (int s = 0; s < shape_.S; ++s)
      for (int a = 0; a < shape_.A; ++a)
        for (int b = 0; b < shape_.B; ++b)
          q[shape_.idx(apply(perm_r, r), apply(perm_s, s), apply(perm_a, a),
                       apply(perm_b, b))] = at(r, s, a, b);
  return validate_nsbox(std::move(q), shape_, tol_);
}

namespace {

struct Worst {
  double residual = 0;
  std::string what;
  void consider(double res, const std::string& desc) {
    if (res > residual) {
      residual = res;
      what = desc;
    }
  }
};

std::string tup(int r, int s, int a, int b) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "(r=%d,s=%d,a=%d,b=%d)", r, s, a, b);
  return buf;
}

// Shared by probe_nsbox and validate_nsbox. When `clamp` is set, small
// negatives are zeroed and each (a,b) block renormalized before checking.
BoxReport check_box(std::vector<double>& p, const BoxShape& shape, double tol,
                    bool clamp, std::string* kind) {
  shape.validate();
  if (p.size() != shape.entries())
    throw ShapeMismatch("box tensor has " + std::to_string(p.size()) +
                        " entries, shape " + shape.str() + " needs " +
                        std::to_string(shape.entries()));
  Worst worst_neg, worst_norm, worst_sig;

  for (int r = 0; r < shape.R; ++r)
    for (int s = 0; s < shape.S; ++s)
      for (int a = 0; a < shape.A; ++a)
        for (int b = 0; b < shape.B; ++b) {
          double& v = p[shape.idx(r, s, a, b)];
          if (v < 0) {
            if (v < -tol) {
              worst_neg.consider(-v, "negative entry at " + tup(r, s, a, b));
            } else if (clamp) {
              v = 0;
            }
          }
        }
  if (worst_neg.residual == 0 && clamp) {
    for (int a = 0; a < shape.A; ++a)
      for (int b = 0; b < shape.B; ++b) {
        double sum = 0;
        for (int r = 0; r < shape.R; ++r)
          for (int s = 0; s < shape.S; ++s) sum += p[shape.idx(r, s, a, b)];
        if (std::abs(sum - 1.0) <= tol && sum > 0) {
          for (int r = 0; r < shape.R; ++r)
            for (int s = 0; s < shape.S; ++s) p[shape.idx(r, s, a, b)] /= sum;
        }
      }
  }

  for (int a = 0; a < shape.A; ++a)
    for (int b = 0; b < shape.B; ++b) {
      double sum = 0;
      for (int r = 0; r < shape.R; ++r)
        for (int s = 0; s < shape.S; ++s) sum += p[shape.idx(r, s, a, b)];
      char buf[64];
      std::snprintf(buf, sizeof(buf), "normalization at (a=%d,b=%d)", a, b);
      worst_norm.consider(std::abs(sum - 1.0) > tol ? std::abs(sum - 1.0) : 0,
                          buf);
    }

  // Nonsignaling: Alice's marginal independent of b, Bob's independent of a.
  for (int a = 0; a < shape.A; ++a)
    for (int r = 0; r < shape.R; ++r) {
      double ref = 0;
      for (int s = 0; s < shape.S; ++s) ref += p[shape.idx(r, s, a, 0)];
      for (int b = 1; b < shape.B; ++b) {
        double m = 0;
        for (int s = 0; s < shape.S; ++s) m += p[shape.idx(r, s, a, b)];
        if (std::abs(m - ref) > tol) {
          char buf[96];
          std::snprintf(buf, sizeof(buf),
                        "Alice marginal P(r=%d|a=%d) differs between b=0 and b=%d",
                        r, a, b);
          worst_sig.consider(std::abs(m - ref), buf);
        }
      }
    }
  for (int b = 0; b < shape.B; ++b)
    for (int s = 0; s < shape.S; ++s) {
      double ref = 0;
      for (int r = 0; r < shape.R; ++r) ref += p[shape.idx(r, s, 0, b)];
      for (int a = 1; a < shape.A; ++a) {
        double m = 0;
        for (int r = 0; r < shape.R; ++r) m += p[shape.idx(r, s, a, b)];
        if (std::abs(m - ref) > tol) {
          char buf[96];
          std::snprintf(buf, sizeof(buf),
                        "Bob marginal P(s=%d|b=%d) differs between a=0 and a=%d",
                        s, b, a);
          worst_sig.consider(std::abs(m - ref), buf);
        }
      }
    }

  BoxReport rep;
  if (worst_neg.residual > 0) {
    rep = {false, worst_neg.what, worst_neg.residual};
    if (kind) *kind = "NegativeEntry";
  } else if (worst_norm.residual > 0) {
    rep = {false, worst_norm.what, worst_norm.residual};
    if (kind) *kind = "NotNormalized";
  } else if (worst_sig.residual > 0) {
    rep = {false, worst_sig.what, worst_sig.residual};
    if (kind) *kind = "Signaling";
  } else {
    rep.ok = true;
  }
  return rep;
}

}  // namespace

BoxReport probe_nsbox(const std::vector<double>& p, const BoxShape& shape,
                      double tol) {
  std::vector<double> copy = p;
  return check_box(copy, shape, tol, /*clamp=*/true, nullptr);
}

NSBox validate_nsbox(std::vector<double> p, const BoxShape& shape, double tol) {
  std::string kind;
  BoxReport rep = check_box(p, shape, tol, /*clamp=*/true, &kind);
  if (!rep.ok) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), " (residual %.3e, tol %.3e)", rep.residual,
                  tol);
    const std::string msg = rep.worst + buf;
    if (kind == "NegativeEntry") throw NegativeEntry(msg);
    if (kind == "NotNormalized") throw NotNormalized(msg);
    throw Signaling(msg);
  }
  return NSBox(shape, std::move(p), tol);
}

std::size_t JointExtension::guarded_size(const BoxShape& shape) {
  const std::size_t seqs = SequenceIndex::count(shape.S, shape.B);
  const double approx = static_cast<double>(shape.R) * static_cast<double>(seqs) *
                        static_cast<double>(shape.A);
  if (approx > static_cast<double>(kMaxEntries))
    throw ExtensionTooLarge(
        "joint extension needs " + std::to_string(approx) +
        " entries (R*S^B*A), above the 2^28 guard; shape " + shape.str());
  return static_cast<std::size_t>(shape.R) * seqs * shape.A;
}

JointExtension JointExtension::zeros(const BoxShape& shape) {
  JointExtension ext;
  ext.shape = shape;
  ext.rho.assign(guarded_size(shape), 0.0);
  return ext;
}

void JointExtension::validate(double tol) const {
  const std::size_t seqs = seq_count();
  for (int a = 0; a < shape.A; ++a) {
    double sum = 0;
    for (int r = 0; r < shape.R; ++r)
      for (std::size_t k = 0; k < seqs; ++k) sum += at(r, k, a);
    if (std::abs(sum - 1.0) > tol)
      throw NotNormalized("extension not normalized for a=" + std::to_string(a) +
                          ", sum " + std::to_string(sum));
  }
}

double extension_residual(const JointExtension& ext, const NSBox& box) {
  if (!(ext.shape == box.shape()))
    throw ShapeMismatch("extension shape " + ext.shape.str() +
                        " vs box shape " + box.shape().str());
  const BoxShape& sh = ext.shape;
  const SeqTable seqs(sh.S, sh.B);
  double worst = 0;
  // marginal over all sequence slots except b, accumulated in one pass
  std::vector<double> m(static_cast<std::size_t>(sh.B) * sh.S);
  for (int r = 0; r < sh.R; ++r)
    for (int a = 0; a < sh.A; ++a) {
      std::fill(m.begin(), m.end(), 0.0);
      for (std::size_t k = 0; k < seqs.size(); ++k) {
        const double v = ext.at(r, k, a);
        if (v == 0) continue;
        for (int b = 0; b < sh.B; ++b) m[b * sh.S + seqs.digit(k, b)] += v;
      }
      for (int b = 0; b < sh.B; ++b)
        for (int s = 0; s < sh.S; ++s)
          worst = std::max(worst, std::abs(m[b * sh.S + s] - box.at(r, s, a, b)));
    }
  return worst;
}

NSBox pr_box() {
  BoxShape sh{2, 2, 2, 2};
  std::vector<double> p(sh.entries(), 0.0);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((r ^ s) == (a & b)) p[sh.idx(r, s, a, b)] = 0.5;
  return validate_nsbox(std::move(p), sh);
}

NSBox uniform_box(const BoxShape& shape) {
  std::vector<double> p(shape.entries(), 1.0 / (shape.R * shape.S));
  return validate_nsbox(std::move(p), shape);
}

NSBox vertex_box(const BoxShape& shape, const std::vector<int>& r_of_a,
                 const std::vector<int>& s_of_b) {
  std::vector<double> p(shape.entries(), 0.0);
  for (int a = 0; a < shape.A; ++a)
    for (int b = 0; b < shape.B; ++b)
      p[shape.idx(r_of_a[a], s_of_b[b], a, b)] = 1.0;
  return validate_nsbox(std::move(p), shape);
}

}  // namespace nlcap
