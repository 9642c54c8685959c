#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feedkit/domain.hpp"

namespace feedkit {

class Spec;

/// A relation with fail and unknown between two signatures, stored
/// normalized: rows are kept for proper inputs only, sorted by (input,
/// output) with fail outputs last, and no proper output survives at an
/// illegal input. The pair (fail, fail) holds for every relation and is kept
/// implicit.
class Rfu {
 public:
  using Pair = std::pair<Point, Point>;

  /// Builds a relation from a raw pair set. Proper outputs at illegal inputs
  /// are dropped (the raw set and the result model the same system); a fail
  /// input mapped to a proper output is rejected.
  Rfu(Signature in_sig, Signature out_sig, std::vector<Pair> raw_pairs);

  static Rfu identity(const Signature& sig);
  /// The relation that declares every input illegal.
  static Rfu fail_all(const Signature& in_sig, const Signature& out_sig);
  /// Relates every input to every output (havoc).
  static Rfu total(const Signature& in_sig, const Signature& out_sig);

  const Signature& in_sig() const { return in_; }
  const Signature& out_sig() const { return out_; }
  const std::vector<Pair>& pairs() const { return pairs_; }

  bool fails_at(const Point& x) const;
  std::vector<Point> outputs_at(const Point& x) const;
  /// Raw membership; (fail, fail) is always contained.
  bool contains(const Point& x, const Point& z) const;
  /// All proper inputs of the signature without a fail row.
  std::vector<Point> legal_inputs() const;

  /// Structural equality of normalized representations. Exported equality of
  /// the modeled systems is `equivalent`.
  friend bool operator==(const Rfu&, const Rfu&);

 private:
  Signature in_, out_;
  std::vector<Pair> pairs_;
};

/// Relational (serial) composition; fail propagates through the middle.
Rfu compose_serial(const Rfu& r, const Rfu& s);

/// Demonic choice: behaviors unite and an input illegal for either operand
/// is illegal for the result.
Rfu demonic_choice(const Rfu& r, const Rfu& s);

/// Parallel composition on concatenated signatures; fails iff either fails.
Rfu parallel(const Rfu& r, const Rfu& s);

/// Cross product: (r ⊗ s).(u,x) pairs r's output on x with s's output on u.
Rfu cross(const Rfu& r, const Rfu& s);

/// Refinement r ⊑ s: on every input legal for r, s is legal and produces a
/// subset of r's behaviors. The output comparison includes the fail entry.
bool refines(const Rfu& r, const Rfu& s);
/// An input witnessing ¬(r ⊑ s), if any.
std::optional<Point> refine_witness(const Rfu& r, const Rfu& s);

/// Mutual refinement; on normalized relations this is pair-set equality.
bool equivalent(const Rfu& r, const Rfu& s);

/// Demonic choice of the iterates r^0 ∨ r^1 ∨ ... ∨ r^k (r^0 = identity).
Rfu star_bounded(const Rfu& r, std::size_t k);

/// The predicate transformer of a relation: legal inputs are those without a
/// fail row, the relation part is the proper pairs.
Spec wp(const Rfu& r);

/// Sorted textual rows, one "input -> output" line per pair.
std::string rfu_table(const Rfu& r);

}  // namespace feedkit
