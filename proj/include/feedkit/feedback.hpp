#pragma once

#include <cstddef>
#include <vector>

#include "feedkit/rfu.hpp"

namespace feedkit {

/// A relation together with the wire ranges that form its feedback bundle.
/// The selected input and output sub-signatures must be identical and fully
/// lifted; the remaining input wires form the free input B, the remaining
/// output wires the free output C (either may be empty).
struct FeedbackShape {
  Rfu rfu;
  std::size_t fb_in_begin = 0, fb_in_end = 0;
  std::size_t fb_out_begin = 0, fb_out_end = 0;
};

FeedbackShape make_shape(Rfu rfu, std::size_t fb_in_begin,
                         std::size_t fb_in_end, std::size_t fb_out_begin,
                         std::size_t fb_out_end);

/// Rewires a relation: new input wire i reads old input wire in_perm[i],
/// likewise for outputs. Both permutations must be bijections.
Rfu permute_wires(const Rfu& r, const std::vector<std::size_t>& in_perm,
                  const std::vector<std::size_t>& out_perm);

/// The four point-free stage relations of instantaneous feedback:
///   begin : B -> (A x B)   pairs x with (bot, x)
///   a     : (A x B) -> (A x B)   one strictly increasing chain step
///   b     : (A x B) -> (A x C)   closes the chain at a stable u
///   end   : (A x C) -> C   hides a maximal u, fails otherwise
struct FeedbackStages {
  Rfu begin, a, b, end;
};
FeedbackStages feedback_stages(const FeedbackShape& shape);

/// Instantaneous feedback begin ; a* ; b with the star bounded by the chain
/// bound of the bundle. Type B -> (A x C) with the bundle first.
Rfu inst_feedback(const FeedbackShape& shape);

/// Feedback with the bundle hidden: inst_feedback composed with end.
Rfu fb_hide(const FeedbackShape& shape);

/// The chain-construction tree for one free input, deduplicated on labels.
/// Its leaf set determines the feedback at that input: output leaves (u,y)
/// are the proper rows, a fail leaf makes the input illegal.
struct FeedbackTree {
  enum class Tag { Pending, Output, Fail };
  struct Node {
    Point u;
    Tag tag = Tag::Pending;
    Point y;  // set for Output nodes
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;  // nodes[0] is the root (bot, Pending)
  Signature bundle_sig, free_out_sig;
};
FeedbackTree feedback_tree(const FeedbackShape& shape, const Point& x);

/// The deterministic specialization: when the relation is the graph of total
/// functions (f, g) and f.x is monotone, the feedback value is the least
/// fixpoint of f.x reached by iteration from bot.
struct DetFixpoint {
  Point u, y;
};
DetFixpoint det_fixpoint(const FeedbackShape& shape, const Point& x);

/// A relation typed ((A x B) x C) -> ((A x B) x D) with both bundles lifted,
/// for feeding back first A then B.
struct DoubleShape {
  Rfu rfu;
  std::size_t a_wires = 0, b_wires = 0;
};
DoubleShape make_double_shape(Rfu rfu, std::size_t a_wires,
                              std::size_t b_wires);

/// Feedback applied first on the A bundle, then on the B bundle, with the
/// three adaptation rewirings in between.
Rfu seq_feedback(const DoubleShape& shape);

/// The side conditions under which seq_feedback agrees with inst_feedback,
/// each evaluated by exhaustive quantification over proper values.
struct SideConditions {
  bool mono = false, mono_fail = false, indep1 = false, indep2 = false;
};
SideConditions side_conditions(const DoubleShape& shape);

}  // namespace feedkit
