#include <numeric>

#include "doctest.h"
#include "feedkit/sts.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace feedkit;
namespace tk = feedkit::testkit;

namespace {

WireRef m8() {
  std::vector<std::string> atoms;
  for (int i = 0; i < 8; ++i) atoms.push_back(std::to_string(i));
  return std::make_shared<WireDomain>("m8", std::move(atoms), false);
}

Point pt(Value v) { return Point::tuple({v}); }

std::vector<Point> all_legal(const Signature& s) { return all_points(s); }

// Counter-style systems over 0..7; `sum_bound` < 0 means input-receptive.
enum class Arith { Mod, Saturate };

Sts make_counter(std::function<Value(Value, Value)> next, long sum_bound) {
  Signature sig{m8()};
  std::vector<Point> legal;
  for (const auto& uxp : all_points(Signature{m8(), m8()})) {
    Value u = uxp.values()[0];
    if (sum_bound < 0 || u <= sum_bound) legal.push_back(uxp);
  }
  std::vector<Sts::Pair> trans;
  for (Value u = 0; u < 8; ++u) {
    for (Value x = 0; x < 8; ++x) {
      trans.emplace_back(Point::tuple({u, x}),
                         Point::tuple({next(u, x), u}));
    }
  }
  return Sts(sig, sig, sig, {pt(0)}, std::move(legal), std::move(trans));
}

Value mod8(long v) { return static_cast<Value>(((v % 8) + 8) % 8); }
Value sat8(long v) { return static_cast<Value>(std::min(v, 7L)); }

Sts r1() {
  return make_counter([](Value u, Value) { return u; }, -1);
}
Sts r2() {
  return make_counter([](Value u, Value) { return mod8(u + 1); }, -1);
}
Sts step_sum() {
  return make_counter([](Value u, Value x) { return mod8(u + x); }, -1);
}
Sts r3() {
  return make_counter([](Value u, Value x) { return sat8(u + x); }, 3);
}

Sts r4() {
  Signature sig{m8()};
  std::vector<Point> legal;
  for (const auto& uxp : all_points(Signature{m8(), m8()})) {
    if (uxp.values()[0] <= 3) legal.push_back(uxp);
  }
  std::vector<Sts::Pair> trans;
  for (Value u = 0; u < 8; ++u) {
    for (Value x = 0; x < 8; ++x) {
      trans.emplace_back(Point::tuple({u, x}),
                         Point::tuple({sat8(u + x), u}));
      trans.emplace_back(Point::tuple({u, x}), Point::tuple({x, u}));
    }
  }
  return Sts(sig, sig, sig, {pt(0)}, std::move(legal), std::move(trans));
}

Prefix prefix_of(std::vector<Value> vals) {
  Prefix p;
  for (Value v : vals) p.push_back(pt(v));
  return p;
}

}  // namespace

TEST_CASE("single steps fail on illegal pairs and branch otherwise") {
  auto sum = step_sum();
  auto res = sts_step(sum, pt(0), pt(3));
  CHECK_FALSE(res.failed);
  REQUIRE(res.successors.size() == 1);
  CHECK(res.successors[0] == Sts::Pair{pt(3), pt(0)});

  auto bounded = r3();
  CHECK(sts_step(bounded, pt(4), pt(0)).failed);
  CHECK(sts_step(bounded, pt(4), pt(7)).failed);

  auto keep = r1();
  auto r = sts_step(keep, pt(0), pt(5));
  REQUIRE(r.successors.size() == 1);
  CHECK(r.successors[0] == Sts::Pair{pt(0), pt(0)});
}

TEST_CASE("the identity-state system outputs zero forever") {
  auto sem = delay_feedback(r1(), 4);
  CHECK(sem.legal().size() == 8 * 8 * 8 * 8);
  for (const auto& [x, y] : sem.io()) {
    CHECK(y == prefix_of({0, 0, 0, 0}));
  }
  CHECK(sem.io().size() == sem.legal().size());
}

TEST_CASE("the counter outputs its step index") {
  auto sem = delay_feedback(r2(), 4);
  for (const auto& [x, y] : sem.io()) {
    CHECK(y == prefix_of({0, 1, 2, 3}));
  }
  CHECK(sem.io().size() == sem.legal().size());
}

TEST_CASE("the summation system outputs prefix sums") {
  auto sem = delay_feedback(step_sum(), 4);
  CHECK(sem.outputs_at(prefix_of({1, 2, 0, 1})) ==
        std::vector<Prefix>{prefix_of({0, 1, 3, 3})});
  for (const auto& [x, y] : sem.io()) {
    long running = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(y[i] == pt(mod8(running)));
      running += x[i].values()[0];
    }
  }
}

TEST_CASE("the bounded system rejects prefixes whose sums overflow") {
  auto sem = delay_feedback(r3(), 3);
  CHECK_FALSE(sem.is_legal(prefix_of({2, 2, 0})));
  CHECK(sem.is_legal(prefix_of({2, 1, 7})));
  for (const auto& x : all_points(Signature{m8()})) {
    for (const auto& y : all_points(Signature{m8()})) {
      for (const auto& z : all_points(Signature{m8()})) {
        Prefix p{x, y, z};
        bool expect = x.values()[0] <= 3 &&
                      x.values()[0] + y.values()[0] <= 3;
        CHECK(sem.is_legal(p) == expect);
      }
    }
  }
}

TEST_CASE("the non-deterministic variant keeps the same legal set") {
  auto a = delay_feedback(r3(), 3);
  auto b = delay_feedback(r4(), 3);
  CHECK(a.legal() == b.legal());
  // And its outputs include the deterministic ones.
  Sts det = r3();
  auto det_sem = delay_feedback(det, 3);
  CHECK(refine_prefix(b, det_sem));
}

TEST_CASE("one-step refinement relates the bounded and unbounded sums") {
  Sts bounded = r3();
  Sts unbounded = make_counter([](Value u, Value x) { return sat8(u + x); },
                               -1);
  CHECK(refine_sts_onestep(bounded, unbounded));
  CHECK_FALSE(refine_sts_onestep(unbounded, bounded));
  CHECK(refine_sts_onestep(bounded, bounded));
}

TEST_CASE("prefix refinement compares legal sets and outputs") {
  auto sem = delay_feedback(r4(), 2);
  CHECK(refine_prefix(sem, sem));
  // A semantics with a strictly smaller legal set does not refine.
  std::vector<Prefix> fewer(sem.legal().begin(), sem.legal().end() - 1);
  PrefixSemantics smaller(sem.in_sig(), sem.out_sig(), 2, fewer,
                          sem.io());
  CHECK_FALSE(refine_prefix(sem, smaller));
  CHECK(refine_prefix(smaller, sem));
}

TEST_CASE("prefix temporal operators") {
  std::vector<Value> zeros{0, 0, 0};
  CHECK(ltl_always(3, [&](std::size_t i) { return zeros[i] == 0; }));
  CHECK_FALSE(ltl_always(3, [&](std::size_t i) { return i < 2; }));
  std::vector<Value> pair{0, 1};
  CHECK(ltl_next(2, [&](std::size_t i) { return pair[i] == 1; }));
  CHECK_THROWS_AS(ltl_next(1, [](std::size_t) { return true; }), Error);

  // An R3 run that violates the assertion at step 2 after realizable steps.
  Sts bounded = r3();
  Prefix x = prefix_of({2, 2, 0});
  std::vector<Point> chain{pt(0), pt(2), pt(4), pt(4)};
  auto realizable = [&](std::size_t i) {
    for (const auto& [u2, y] : bounded.successors(chain[i], x[i])) {
      if (u2 == chain[i + 1]) return true;
    }
    return false;
  };
  auto legal_at = [&](std::size_t n) {
    return bounded.is_legal(chain[n], x[n]);
  };
  CHECK_FALSE(ltl_lead(3, realizable, legal_at));
  Prefix ok = prefix_of({1, 1, 1});
  std::vector<Point> chain2{pt(0), pt(1), pt(2), pt(3)};
  auto realizable2 = [&](std::size_t i) {
    for (const auto& [u2, y] : bounded.successors(chain2[i], ok[i])) {
      if (u2 == chain2[i + 1]) return true;
    }
    return false;
  };
  auto legal_at2 = [&](std::size_t n) {
    return bounded.is_legal(chain2[n], ok[n]);
  };
  CHECK(ltl_lead(3, realizable2, legal_at2));
}

TEST_CASE("the exhaustive chain oracle agrees with the layered computation") {
  for (std::size_t h = 1; h <= 3; ++h) {
    CHECK(delay_feedback(r1(), h) == tk::oracle_delay(r1(), h));
    CHECK(delay_feedback(r3(), h) == tk::oracle_delay(r3(), h));
  }
  tk::Rng rng(211);
  for (int i = 0; i < 25; ++i) {
    Sts s = tk::random_sts(rng);
    for (std::size_t h = 1; h <= 3; ++h) {
      CHECK(delay_feedback(s, h) == tk::oracle_delay(s, h));
    }
  }
  CHECK_THROWS_AS(tk::oracle_delay(r1(), 4, 10), Error);
}

TEST_CASE("legality equals the lead condition over all state chains") {
  tk::Rng rng(229);
  for (int iter = 0; iter < 10; ++iter) {
    Sts s = tk::random_sts(rng);
    std::size_t h = 2 + iter % 2;
    auto sem = delay_feedback(s, h);
    auto states = all_points(s.state_sig());
    // Every chain from init must satisfy (realizable L legal) on the prefix.
    std::vector<Prefix> inputs;
    for (const auto& x : all_points(s.in_sig())) inputs.push_back({x});
    std::function<void(Prefix&, std::size_t)> walk = [&](Prefix& x,
                                                         std::size_t depth) {
      if (depth == h) {
        bool ok = true;
        std::vector<std::size_t> chain(h, 0);
        for (;;) {
          std::vector<Point> u{};
          for (std::size_t i = 0; i < h; ++i) u.push_back(states[chain[i]]);
          bool from_init =
              std::find(s.init().begin(), s.init().end(), u[0]) !=
              s.init().end();
          if (from_init) {
            auto realizable = [&](std::size_t i) {
              if (i + 1 >= h) return false;
              for (const auto& [u2, y] : s.successors(u[i], x[i])) {
                if (u2 == u[i + 1]) return true;
              }
              return false;
            };
            auto legal_at = [&](std::size_t n) {
              return s.is_legal(u[n], x[n]);
            };
            if (!ltl_lead(h, realizable, legal_at)) ok = false;
          }
          std::size_t i = h;
          bool done = true;
          while (i-- > 0) {
            if (++chain[i] < states.size()) {
              done = false;
              break;
            }
            chain[i] = 0;
          }
          if (done) break;
        }
        CHECK(sem.is_legal(x) == ok);
        return;
      }
      for (const auto& xi : all_points(s.in_sig())) {
        x.push_back(xi);
        walk(x, depth + 1);
        x.pop_back();
      }
    };
    Prefix x;
    walk(x, 0);
  }
}

TEST_CASE("illegal prefixes stay illegal at longer horizons") {
  tk::Rng rng(223);
  for (int i = 0; i < 20; ++i) {
    Sts s = tk::random_sts(rng);
    auto short_sem = delay_feedback(s, 2);
    auto long_sem = delay_feedback(s, 3);
    for (const auto& x : long_sem.legal()) {
      Prefix head(x.begin(), x.begin() + 2);
      CHECK(short_sem.is_legal(head));
    }
  }
}

TEST_CASE("deterministic receptive systems have one run per prefix") {
  auto sem = delay_feedback(step_sum(), 3);
  for (const auto& x : sem.legal()) {
    CHECK(sem.outputs_at(x).size() == 1);
  }
}

TEST_CASE("one-step refinement transfers to every horizon") {
  tk::Rng rng(227);
  for (int i = 0; i < 25; ++i) {
    auto [s, t] = tk::sts_refinement_pair(rng);
    REQUIRE(refine_sts_onestep(s, t));
    REQUIRE(s.init() == t.init());
    for (std::size_t h = 1; h <= 3; ++h) {
      CHECK(refine_prefix(delay_feedback(s, h), delay_feedback(t, h)));
    }
  }
}

TEST_CASE("horizon zero is the empty-prefix semantics") {
  auto sem = delay_feedback(step_sum(), 0);
  CHECK(sem.legal() == std::vector<Prefix>{{}});
  CHECK(sem.io() == std::vector<PrefixSemantics::IoPair>{{{}, {}}});
  CHECK(sem == tk::oracle_delay(step_sum(), 0));
}
