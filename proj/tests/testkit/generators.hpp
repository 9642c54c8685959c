#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>

#include "feedkit/feedback.hpp"
#include "feedkit/spec.hpp"
#include "feedkit/sts.hpp"

// Seeded random generators for the property and acceptance suites. Emitted
// pairs satisfy their contract (refinement, monotonicity, side conditions)
// by construction; the suites still cross-check with the oracles.
namespace feedkit::testkit {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
  }
};

WireRef make_wire(const std::string& name, std::size_t atoms, bool lifted);

/// Signature with wire and atom counts inside the testkit bounds
/// (<= 3 wires, <= 3 atoms per wire).
Signature random_sig(Rng& rng, std::size_t min_wires, std::size_t max_wires,
                     std::size_t max_atoms, bool lifted,
                     const std::string& prefix);

Rfu random_rfu(Rng& rng, const Signature& in_sig, const Signature& out_sig,
               double fail_p, double row_p);

/// A relation refined by construction: illegal inputs of r may become
/// anything, outputs at legal inputs shrink.
Rfu shrink_refine(Rng& rng, const Rfu& r);

/// A feedback shape with <= 2 lifted bundle wires and <= 3-atom domains.
FeedbackShape random_shape(Rng& rng);
/// The same shape with a refining relation.
std::pair<FeedbackShape, FeedbackShape> shape_refinement_pair(Rng& rng);

/// A deterministic shape: the relation is the graph of total functions
/// (f, g) with f.x monotone, plus the tables for the fixpoint oracle.
struct DetSample {
  FeedbackShape shape;
  std::map<Point, std::map<Point, Point>> f;  // free input -> (u -> f.x.u)
  std::map<Point, std::map<Point, Point>> g;
  Signature bundle, free_in, free_out;
};
DetSample random_det_sample(Rng& rng);

/// Operands for the cross-product serial identity: r arbitrary, s total and
/// fail-free over single lifted wires.
struct CrossSample {
  Rfu r, s;
};
CrossSample random_cross_sample(Rng& rng);

/// A double shape whose relation satisfies mono by downward closure of the
/// proper rows (fails upward-closed).
DoubleShape random_mono_double(Rng& rng);
/// A double shape from the coordinate-product family: satisfies all four
/// side conditions.
DoubleShape random_full_double(Rng& rng);

Sts random_sts(Rng& rng);
/// (s, t) with refine_sts_onestep(s, t) and equal init by construction.
std::pair<Sts, Sts> sts_refinement_pair(Rng& rng);

Spec random_spec(Rng& rng, const Signature& in_sig, const Signature& out_sig);

}  // namespace feedkit::testkit
