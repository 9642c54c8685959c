#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "feedkit/spec.hpp"

namespace feedkit {

/// A stateful component: initial states, a legal-input predicate over
/// (state, input), and a transition relation over ((state, input),
/// (next-state, output)). All points are proper.
class Sts {
 public:
  using Pair = std::pair<Point, Point>;

  Sts(Signature state_sig, Signature in_sig, Signature out_sig,
      std::vector<Point> init, std::vector<Point> legal,
      std::vector<Pair> trans);

  const Signature& state_sig() const { return state_; }
  const Signature& in_sig() const { return in_; }
  const Signature& out_sig() const { return out_; }
  const std::vector<Point>& init() const { return init_; }
  const std::vector<Point>& legal() const { return legal_; }
  const std::vector<Pair>& trans() const { return trans_; }

  bool is_legal(const Point& state, const Point& input) const;
  /// Successor (next-state, output) pairs of a legal (state, input).
  std::vector<Pair> successors(const Point& state, const Point& input) const;

  /// The one-step predicate transformer {legal};[trans] over the
  /// concatenated signatures.
  Spec one_step_spec() const;

 private:
  Signature state_, in_, out_;
  std::vector<Point> init_;
  std::vector<Point> legal_;
  std::vector<Pair> trans_;
};

/// One execution step: fails iff (state, input) violates the legal-input
/// predicate, otherwise yields every (next-state, output) choice.
struct StepResult {
  bool failed = false;
  std::vector<Sts::Pair> successors;
};
StepResult sts_step(const Sts& s, const Point& state, const Point& input);

using Prefix = std::vector<Point>;

/// Input prefixes of length `horizon` from which no realizable state chain
/// reaches a violated assertion. A prefix is illegal as soon as one chain
/// fails, even if non-failing choices exist.
std::vector<Prefix> legal_prefixes(const Sts& s, std::size_t horizon);

/// The horizon-H unit-delay-feedback semantics: legal input prefixes plus an
/// input/output prefix relation, stored canonically (io inputs are legal).
class PrefixSemantics {
 public:
  using IoPair = std::pair<Prefix, Prefix>;

  PrefixSemantics(Signature in_sig, Signature out_sig, std::size_t horizon,
                  std::vector<Prefix> legal, std::vector<IoPair> io);

  const Signature& in_sig() const { return in_; }
  const Signature& out_sig() const { return out_; }
  std::size_t horizon() const { return horizon_; }
  const std::vector<Prefix>& legal() const { return legal_; }
  const std::vector<IoPair>& io() const { return io_; }

  bool is_legal(const Prefix& x) const;
  std::vector<Prefix> outputs_at(const Prefix& x) const;

  friend bool operator==(const PrefixSemantics&, const PrefixSemantics&);

 private:
  Signature in_, out_;
  std::size_t horizon_;
  std::vector<Prefix> legal_;
  std::vector<IoPair> io_;
};

/// Unit-delay feedback of a stateful component at a finite horizon. An io
/// pair is witnessed by a state chain from init satisfying the transition
/// relation at every position.
PrefixSemantics delay_feedback(const Sts& s, std::size_t horizon);

/// Refinement of the one-step transformers {legal};[trans]. Preservation of
/// refinement at the prefix level additionally needs equal init sets.
bool refine_sts_onestep(const Sts& s, const Sts& t);

/// Prefix-level refinement: every t-legal... see refine_spec, applied at
/// prefix granularity: legal(s) included in legal(t), and on s-legal
/// prefixes every t output prefix is an s output prefix.
bool refine_prefix(const PrefixSemantics& s, const PrefixSemantics& t);

/// Finite-prefix temporal operators. Indices quantify over the available
/// prefix only.
using IndexPred = std::function<bool(std::size_t)>;

/// Always: the predicate holds at every index below len.
bool ltl_always(std::size_t len, const IndexPred& p);
/// Next: the predicate shifted by one, i.e. evaluated at index 1. Requires
/// len >= 2.
bool ltl_next(std::size_t len, const IndexPred& p);
/// Lead (p L q): whenever p holds continuously up to n-1, q holds at n, for
/// every n below len.
bool ltl_lead(std::size_t len, const IndexPred& p, const IndexPred& q);

std::string prefix_text(const Signature& sig, const Prefix& p);
std::string semantics_table(const PrefixSemantics& sem);

}  // namespace feedkit
