#include "doctest.h"
#include "feedkit/spec.hpp"
#include "generators.hpp"

using namespace feedkit;
namespace tk = feedkit::testkit;

namespace {

WireRef boolw(const std::string& name = "b") {
  return std::make_shared<WireDomain>(name, std::vector<std::string>{"f", "t"},
                                      false);
}

// The three-valued integer domain {-1, 0, 1}.
WireRef i3() {
  return std::make_shared<WireDomain>(
      "i3", std::vector<std::string>{"-1", "0", "1"}, false);
}

Point pt(std::vector<Value> v) { return Point::tuple(std::move(v)); }

// Atom indices: -1 -> 0, 0 -> 1, 1 -> 2.
constexpr Value kNeg = 0, kZero = 1, kOne = 2;

}  // namespace

TEST_CASE("basic transformers") {
  Signature sig{boolw()};
  Spec skip = Spec::skip(sig);
  CHECK(skip.legal() == all_points(sig));
  CHECK(skip.rel() ==
        std::vector<Spec::Pair>{{pt({0}), pt({0})}, {pt({1}), pt({1})}});
  CHECK(Spec::fail(sig, sig).legal().empty());
  CHECK(Spec::havoc(sig, sig).rel().size() == 4);
  CHECK(Spec::magic(sig, sig).rel().empty());
}

TEST_CASE("canonical form restricts the relation to legal inputs") {
  Signature sig{boolw()};
  Spec s(sig, sig, {pt({0})}, {{pt({0}), pt({1})}, {pt({1}), pt({0})}});
  CHECK(s.rel() == std::vector<Spec::Pair>{{pt({0}), pt({1})}});
  // Idempotent.
  Spec again(sig, sig, s.legal(), s.rel());
  CHECK(again == s);
}

TEST_CASE("skip is neutral for serial composition") {
  tk::Rng rng(5);
  Signature sig{boolw()};
  for (int i = 0; i < 30; ++i) {
    Spec s = tk::random_spec(rng, sig, sig);
    CHECK(seq_spec(Spec::skip(sig), s) == s);
    CHECK(seq_spec(s, Spec::skip(sig)) == s);
  }
}

TEST_CASE("composing with magic clears outputs but keeps the legal set") {
  Signature sig{boolw()};
  Spec s(sig, sig, all_points(sig), {{pt({0}), pt({0})}});
  // Magic's assert is the full set, so the universally quantified legality
  // condition holds at every input; only the relation collapses.
  Spec after = seq_spec(s, Spec::magic(sig, sig));
  CHECK(after.legal() == all_points(sig));
  CHECK(after.rel().empty());
  CHECK(after == Spec::magic(sig, sig));
}

TEST_CASE("serial composition is associative") {
  tk::Rng rng(7);
  Signature sig{boolw()};
  for (int i = 0; i < 60; ++i) {
    Spec a = tk::random_spec(rng, sig, sig);
    Spec b = tk::random_spec(rng, sig, sig);
    Spec c = tk::random_spec(rng, sig, sig);
    CHECK(seq_spec(seq_spec(a, b), c) == seq_spec(a, seq_spec(b, c)));
  }
}

TEST_CASE("the bounded-input transformers T4, T5 and T6 coincide") {
  Signature sig{i3()};
  std::vector<Point> nonneg{pt({kZero}), pt({kOne})};
  Spec t1 = Spec::update(sig, sig,
                         {{pt({kNeg}), pt({kNeg})},
                          {pt({kZero}), pt({kZero})},
                          {pt({kOne}), pt({kOne})}});
  Spec t2 = Spec::update(sig, sig,
                         {{pt({kZero}), pt({kZero})}, {pt({kOne}), pt({kOne})}});
  std::vector<Spec::Pair> t3_rel{{pt({kZero}), pt({kZero})},
                                 {pt({kOne}), pt({kOne})}};
  for (const auto& y : all_points(sig)) t3_rel.emplace_back(pt({kNeg}), y);
  Spec t3 = Spec::update(sig, sig, t3_rel);
  Spec t4 = seq_spec(Spec::assert_legal(sig, nonneg), t1);
  Spec t5(sig, sig, nonneg, t2.rel());
  Spec t6(sig, sig, nonneg, t3.rel());
  CHECK(t4 == t5);
  CHECK(t5 == t6);
  CHECK(t1 != t4);
  CHECK(t1 != t2);
  CHECK(t2 != t3);

  CHECK(refine_spec(t4, t1));
  CHECK_FALSE(refine_spec(t1, t4));
  CHECK(refine_spec(Spec::fail(sig, sig), t4));
  CHECK(refine_spec(t4, t4));

  CHECK(miracle_free(t1));
  CHECK_FALSE(miracle_free(t2));
  CHECK(miracle_free(t3));
  CHECK(miracle_free(t4));
  CHECK_FALSE(miracle_free(Spec::magic(sig, sig)));
}

TEST_CASE("fusion intersects, product stacks") {
  Signature sig{boolw()};
  Spec id = Spec::skip(sig);
  Spec neg = Spec::update(sig, sig, {{pt({0}), pt({1})}, {pt({1}), pt({0})}});
  std::vector<Spec> one{id};
  CHECK(fuse_specs(one) == id);
  std::vector<Spec> havoc_and_neg{Spec::havoc(sig, sig), neg};
  CHECK(fuse_specs(havoc_and_neg) == neg);
  std::vector<Spec> nothing{id, neg};
  CHECK(fuse_specs(nothing) == Spec::magic(sig, sig));
  CHECK_THROWS_AS(fuse_specs(std::span<const Spec>{}), Error);

  CHECK(product_spec(id, id) ==
        Spec::skip(Signature{boolw(), boolw()}));
  Spec dead = product_spec(id, Spec::fail(sig, sig));
  CHECK(dead.legal().empty());
  Spec single_l = Spec::update(sig, sig, {{pt({0}), pt({1})}});
  Spec single_r = Spec::update(sig, sig, {{pt({1}), pt({0})}});
  Spec both = product_spec(single_l, single_r);
  CHECK(both.rel() ==
        std::vector<Spec::Pair>{{pt({0, 1}), pt({1, 0})}});
}

TEST_CASE("demonic choice is idempotent with fail as zero") {
  tk::Rng rng(13);
  Signature sig{boolw()};
  for (int i = 0; i < 30; ++i) {
    Spec s = tk::random_spec(rng, sig, sig);
    CHECK(demonic_spec(s, s) == s);
    CHECK(demonic_spec(s, Spec::fail(sig, sig)) == Spec::fail(sig, sig));
  }
}

TEST_CASE("product and fusion are monotone for refinement") {
  tk::Rng rng(17);
  Signature sig{boolw()};
  auto shrink = [&](const Spec& s) {
    std::vector<Point> legal = s.legal();
    for (const auto& x : all_points(sig)) {
      if (!s.is_legal(x)) legal.push_back(x);
    }
    std::vector<Spec::Pair> rel;
    for (const auto& p : s.rel()) {
      if (rng.chance(0.7)) rel.push_back(p);
    }
    // Anything goes at newly legal inputs.
    for (const auto& x : all_points(sig)) {
      if (!s.is_legal(x) && rng.chance(0.5)) {
        rel.emplace_back(x, all_points(sig)[rng.below(2)]);
      }
    }
    return Spec(sig, sig, std::move(legal), std::move(rel));
  };
  for (int i = 0; i < 40; ++i) {
    Spec s = tk::random_spec(rng, sig, sig);
    Spec s2 = shrink(s);
    Spec t = tk::random_spec(rng, sig, sig);
    Spec t2 = shrink(t);
    REQUIRE(refine_spec(s, s2));
    REQUIRE(refine_spec(t, t2));
    CHECK(refine_spec(product_spec(s, t), product_spec(s2, t2)));
    std::vector<Spec> f1{s, t}, f2{s2, t2};
    CHECK(refine_spec(fuse_specs(f1), fuse_specs(f2)));
    CHECK(refine_spec(seq_spec(s, t), seq_spec(s2, t2)));
  }
}

TEST_CASE("spec equality is mutual refinement on canonical forms") {
  tk::Rng rng(19);
  Signature sig{boolw()};
  for (int i = 0; i < 60; ++i) {
    Spec s = tk::random_spec(rng, sig, sig);
    Spec t = tk::random_spec(rng, sig, sig);
    CHECK((s == t) == (refine_spec(s, t) && refine_spec(t, s)));
  }
}
