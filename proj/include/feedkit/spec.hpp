#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "feedkit/domain.hpp"

namespace feedkit {

/// A predicate transformer of shape {p};[r]: a set of legal inputs plus a
/// proper input/output relation. No fail point appears anywhere. Stored
/// canonically: rel contains no pair whose input is outside legal, which
/// makes structural equality coincide with transformer equality.
class Spec {
 public:
  using Pair = std::pair<Point, Point>;

  Spec(Signature in_sig, Signature out_sig, std::vector<Point> legal,
       std::vector<Pair> rel);

  static Spec skip(const Signature& sig);
  static Spec fail(const Signature& in_sig, const Signature& out_sig);
  static Spec magic(const Signature& in_sig, const Signature& out_sig);
  static Spec havoc(const Signature& in_sig, const Signature& out_sig);
  static Spec assert_legal(const Signature& sig, std::vector<Point> legal);
  static Spec update(const Signature& in_sig, const Signature& out_sig,
                     std::vector<Pair> rel);

  const Signature& in_sig() const { return in_; }
  const Signature& out_sig() const { return out_; }
  const std::vector<Point>& legal() const { return legal_; }
  const std::vector<Pair>& rel() const { return rel_; }

  bool is_legal(const Point& x) const;
  std::vector<Point> outputs_at(const Point& x) const;

  friend bool operator==(const Spec&, const Spec&);

 private:
  Signature in_, out_;
  std::vector<Point> legal_;
  std::vector<Pair> rel_;
};

/// Serial composition: an input is legal iff it is legal for s and every
/// s-output of it is legal for t.
Spec seq_spec(const Spec& s, const Spec& t);

/// Refinement s ⊑ t per the assert/update characterization.
bool refine_spec(const Spec& s, const Spec& t);

/// Fusion of a non-empty list: legal sets and relations intersect.
Spec fuse_specs(std::span<const Spec> specs);

/// Parallel product on concatenated signatures.
Spec product_spec(const Spec& s, const Spec& t);

/// Demonic choice: legal sets intersect, behaviors unite.
Spec demonic_spec(const Spec& s, const Spec& t);

/// Law of excluded miracle: every legal input has at least one output.
bool miracle_free(const Spec& s);

/// The stage transformers of instantaneous feedback, built inside the Spec
/// algebra. `bundle_wires` is the length k of the lifted feedback prefix of
/// both signatures; the transformer s must have shape (A x B) -> (A x C)
/// with A the bundle.
Spec fb_begin_spec(const Signature& bundle, const Signature& free_in);
Spec fb_end_spec(const Signature& bundle, const Signature& free_out);
Spec fb_a_spec(const Spec& s, std::size_t bundle_wires);
Spec fb_b_spec(const Spec& s, std::size_t bundle_wires);

/// Instantaneous feedback on predicate transformers:
/// Fb_begin ; (Fb_a.s)* ; Fb_b.s, with the star computed as the demonic
/// choice of powers up to the chain bound of the bundle.
Spec inst_feedback_pt(const Spec& s, std::size_t bundle_wires);

std::string spec_table(const Spec& s);

}  // namespace feedkit
