#pragma once

#include <string>
#include <vector>

#include "mop/errors.hpp"
#include "mop/scalar.hpp"

namespace mop {

enum class MomentProvenance { hermite, laguerre, meixner, raw };

// Normalized power moments s_0..s_J of a positive measure, s_0 = 1.
template <class S>
struct MomentSequence {
  std::vector<S> values;
  bool normalized = true;
  MomentProvenance provenance = MomentProvenance::raw;

  int max_order() const { return static_cast<int>(values.size()) - 1; }

  const S& at(int j) const {
    if (j < 0 || j > max_order())
      throw InsufficientMoments("moment order " + std::to_string(j) + " not available (have " +
                                std::to_string(max_order()) + ")");
    return values[static_cast<std::size_t>(j)];
  }
};

template <class S>
struct MomentPair {
  MomentSequence<S> mu1;
  MomentSequence<S> mu2;
};

// Moments of exp(-x^2 + c x), normalized.  Integration by parts gives
// s_{j+1} = (c/2) s_j + (j/2) s_{j-1}.
template <class S>
MomentSequence<S> hermite_moments(const S& c, int max_order) {
  if (max_order < 0) throw DomainError("hermite_moments: max order must be >= 0");
  MomentSequence<S> seq;
  seq.provenance = MomentProvenance::hermite;
  seq.values.reserve(static_cast<std::size_t>(max_order) + 1);
  seq.values.push_back(S(1));
  for (int j = 0; j < max_order; ++j) {
    S next = (c / 2) * seq.values[static_cast<std::size_t>(j)];
    if (j >= 1) next += (S(j) / 2) * seq.values[static_cast<std::size_t>(j - 1)];
    seq.values.push_back(next);
  }
  return seq;
}

// Moments of x^alpha e^{-x} on (0, inf), normalized: the rising
// factorial (alpha+1)(alpha+2)...(alpha+j).
template <class S>
MomentSequence<S> laguerre_moments(const S& alpha, int max_order) {
  if (!(alpha > S(-1))) throw DomainError("laguerre_moments: alpha must be > -1");
  if (max_order < 0) throw DomainError("laguerre_moments: max order must be >= 0");
  MomentSequence<S> seq;
  seq.provenance = MomentProvenance::laguerre;
  seq.values.reserve(static_cast<std::size_t>(max_order) + 1);
  seq.values.push_back(S(1));
  for (int j = 1; j <= max_order; ++j)
    seq.values.push_back(seq.values.back() * (alpha + S(j)));
  return seq;
}

struct MeixnerOptions {
  double tail_tolerance = 1e-16;  // relative magnitude of the next term
  int term_cap = 10000;
};

// Moments of the negative-binomial weight (beta)_k c^k / k! on Z_+,
// normalized by (1-c)^beta.  Direct truncated summation.
template <class S>
MomentSequence<S> meixner_moments(const S& beta, const S& c, int max_order,
                                  const MeixnerOptions& opt = {}) {
  if (!(beta > S(0))) throw DomainError("meixner_moments: beta must be > 0");
  if (!(c > S(0) && c < S(1))) throw DomainError("meixner_moments: c must be in (0,1)");
  if (max_order < 0) throw DomainError("meixner_moments: max order must be >= 0");

  std::vector<S> sums(static_cast<std::size_t>(max_order) + 1, S(0));
  S weight(1);  // (beta)_k c^k / k!
  bool converged = false;
  for (int k = 0; k <= opt.term_cap; ++k) {
    S kp(1);  // k^j
    for (int j = 0; j <= max_order; ++j) {
      sums[static_cast<std::size_t>(j)] += kp * weight;
      kp *= S(k);
    }
    // Tail bound on the heaviest column: weight * k^J relative to its sum.
    if (k > 0) {
      S top = weight;
      for (int j = 0; j < max_order; ++j) top *= S(k);
      if (top <= S(opt.tail_tolerance) * max_val(S(1), abs_val(sums[static_cast<std::size_t>(max_order)]))) {
        converged = true;
        break;
      }
    }
    weight *= c * (beta + S(k)) / S(k + 1);
  }
  if (!converged)
    throw ConvergenceError("meixner_moments: tail bound not met within " +
                           std::to_string(opt.term_cap) + " terms");

  MomentSequence<S> seq;
  seq.provenance = MomentProvenance::meixner;
  seq.values.resize(sums.size());
  const S total = sums[0];  // equals (1-c)^(-beta)
  for (std::size_t j = 0; j < sums.size(); ++j) seq.values[j] = sums[j] / total;
  return seq;
}

// Normalize two user-supplied raw moment lists into a pair (s_0 = 1).
template <class S>
MomentPair<S> raw_moments(const std::vector<S>& values1, const std::vector<S>& values2) {
  if (values1.empty() || values2.empty()) throw DomainError("raw_moments: empty moment list");
  if (values1.size() != values2.size())
    throw DomainError("raw_moments: moment lists must have equal length");
  for (const auto* v : {&values1, &values2}) {
    for (const auto& x : *v)
      if (!finite_val(x)) throw DomainError("raw_moments: non-finite moment entry");
    if ((*v)[0] == S(0)) throw DomainError("raw_moments: zero leading moment");
  }
  MomentPair<S> pair;
  for (int i = 0; i < 2; ++i) {
    const auto& src = i == 0 ? values1 : values2;
    MomentSequence<S> seq;
    seq.provenance = MomentProvenance::raw;
    seq.values.resize(src.size());
    for (std::size_t j = 0; j < src.size(); ++j) seq.values[j] = src[j] / src[0];
    (i == 0 ? pair.mu1 : pair.mu2) = std::move(seq);
  }
  return pair;
}

template <class S>
MomentPair<S> make_pair(MomentSequence<S> mu1, MomentSequence<S> mu2) {
  if (mu1.values.size() != mu2.values.size())
    throw DomainError("moment pair: sequences must have equal length");
  return MomentPair<S>{std::move(mu1), std::move(mu2)};
}

}  // namespace mop
