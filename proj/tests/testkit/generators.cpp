#include "generators.hpp"

#include <algorithm>
#include <set>

namespace feedkit::testkit {

WireRef make_wire(const std::string& name, std::size_t atoms, bool lifted) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < atoms; ++i) {
    names.push_back("a" + std::to_string(i));
  }
  return std::make_shared<WireDomain>(name, std::move(names), lifted);
}

Signature random_sig(Rng& rng, std::size_t min_wires, std::size_t max_wires,
                     std::size_t max_atoms, bool lifted,
                     const std::string& prefix) {
  std::size_t n = min_wires + rng.below(max_wires - min_wires + 1);
  Signature sig;
  for (std::size_t i = 0; i < n; ++i) {
    sig.push_back(make_wire(prefix + std::to_string(i),
                            2 + rng.below(max_atoms - 1), lifted));
  }
  return sig;
}

Rfu random_rfu(Rng& rng, const Signature& in_sig, const Signature& out_sig,
               double fail_p, double row_p) {
  std::vector<Rfu::Pair> pairs;
  auto outs = all_points(out_sig);
  for (const auto& x : all_points(in_sig)) {
    if (rng.chance(fail_p)) {
      pairs.emplace_back(x, Point::fail());
      continue;
    }
    for (const auto& z : outs) {
      if (rng.chance(row_p)) pairs.emplace_back(x, z);
    }
  }
  return Rfu(in_sig, out_sig, std::move(pairs));
}

Rfu shrink_refine(Rng& rng, const Rfu& r) {
  std::vector<Rfu::Pair> pairs;
  auto outs = all_points(r.out_sig());
  for (const auto& x : all_points(r.in_sig())) {
    if (r.fails_at(x)) {
      // Illegal for r: the refinement may do anything here.
      if (rng.chance(0.3)) {
        pairs.emplace_back(x, Point::fail());
      } else {
        for (const auto& z : outs) {
          if (rng.chance(0.3)) pairs.emplace_back(x, z);
        }
      }
      continue;
    }
    for (const auto& z : r.outputs_at(x)) {
      if (rng.chance(0.7)) pairs.emplace_back(x, z);
    }
  }
  return Rfu(r.in_sig(), r.out_sig(), std::move(pairs));
}

FeedbackShape random_shape(Rng& rng) {
  Signature bundle = random_sig(rng, 1, 2, 3, true, "fb");
  Signature free_in =
      random_sig(rng, 0, 1, 3, rng.chance(0.5), "in");
  Signature free_out =
      random_sig(rng, 0, 1, 3, rng.chance(0.5), "out");
  Rfu r = random_rfu(rng, concat(bundle, free_in), concat(bundle, free_out),
                     0.15, 0.25);
  return make_shape(std::move(r), 0, bundle.size(), 0, bundle.size());
}

std::pair<FeedbackShape, FeedbackShape> shape_refinement_pair(Rng& rng) {
  FeedbackShape s = random_shape(rng);
  Rfu refined = shrink_refine(rng, s.rfu);
  FeedbackShape t = make_shape(std::move(refined), s.fb_in_begin, s.fb_in_end,
                               s.fb_out_begin, s.fb_out_end);
  return {std::move(s), std::move(t)};
}

namespace {

// Monotone function on a flat product CPO: fix values on the maximal points
// and extend downward by agreement; disagreement yields unknown.
std::map<Point, Point> random_monotone_fn(Rng& rng, const Signature& a_sig) {
  auto points = all_points(a_sig);
  std::vector<Point> maximals;
  for (const auto& p : points) {
    if (maximal(p)) maximals.push_back(p);
  }
  std::map<Point, Point> h;
  for (const auto& m : maximals) {
    h[m] = points[rng.below(points.size())];
  }
  std::map<Point, Point> f;
  for (const auto& u : points) {
    std::vector<Value> vals(a_sig.size(), kBot);
    for (std::size_t j = 0; j < a_sig.size(); ++j) {
      bool first = true;
      Value agreed = kBot;
      bool agrees = true;
      for (const auto& m : maximals) {
        if (!leq(u, m)) continue;
        Value v = h.at(m).values()[j];
        if (first) {
          agreed = v;
          first = false;
        } else if (v != agreed) {
          agrees = false;
          break;
        }
      }
      if (agrees && !first) vals[j] = agreed;
    }
    f[u] = Point::tuple(std::move(vals));
  }
  return f;
}

}  // namespace

DetSample random_det_sample(Rng& rng) {
  Signature bundle = random_sig(rng, 1, 2, 3, true, "fb");
  Signature free_in = random_sig(rng, 0, 1, 3, rng.chance(0.5), "in");
  Signature free_out = random_sig(rng, 1, 1, 3, rng.chance(0.5), "out");
  auto a_points = all_points(bundle);
  auto c_points = all_points(free_out);
  std::map<Point, std::map<Point, Point>> fs, gs;
  std::vector<Rfu::Pair> pairs;
  for (const auto& x : all_points(free_in)) {
    auto f = random_monotone_fn(rng, bundle);
    std::map<Point, Point> g;
    for (const auto& u : a_points) {
      g[u] = c_points[rng.below(c_points.size())];
    }
    for (const auto& u : a_points) {
      pairs.emplace_back(concat(u, x), concat(f.at(u), g.at(u)));
    }
    fs[x] = std::move(f);
    gs[x] = std::move(g);
  }
  Rfu r(concat(bundle, free_in), concat(bundle, free_out), std::move(pairs));
  FeedbackShape shape = make_shape(std::move(r), 0, bundle.size(), 0,
                                   bundle.size());
  return {std::move(shape), std::move(fs), std::move(gs), std::move(bundle),
          std::move(free_in), std::move(free_out)};
}

CrossSample random_cross_sample(Rng& rng) {
  Signature a{make_wire("xa", 2 + rng.below(2), true)};
  Signature b{make_wire("xb", 2 + rng.below(2), true)};
  Signature c{make_wire("xc", 2 + rng.below(2), true)};
  Rfu r = random_rfu(rng, a, b, 0.2, 0.35);
  // s must be total and never fail, in particular not at bot.
  std::vector<Rfu::Pair> pairs;
  auto outs = all_points(c);
  for (const auto& u : all_points(b)) {
    std::set<std::size_t> chosen{rng.below(outs.size())};
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (rng.chance(0.3)) chosen.insert(i);
    }
    for (std::size_t i : chosen) pairs.emplace_back(u, outs[i]);
  }
  Rfu s(b, c, std::move(pairs));
  return {std::move(r), std::move(s)};
}

DoubleShape random_mono_double(Rng& rng) {
  Signature a{make_wire("da", 2, true)};
  Signature b{make_wire("db", 2, true)};
  Signature c = random_sig(rng, 0, 1, 2, false, "dc");
  Signature d{make_wire("dd", 2, false)};
  Signature ab = concat(a, b);
  Signature in_sig = concat(ab, c);
  Signature out_sig = concat(ab, d);
  auto ab_points = all_points(ab);
  std::vector<Rfu::Pair> pairs;
  bool with_fails = rng.chance(0.4);
  for (const auto& x : all_points(c)) {
    for (const auto& u : ab_points) {
      if (with_fails && rng.chance(0.12)) {
        // Upward-closed fail set keeps mono intact after normalization.
        for (const auto& v : ab_points) {
          if (leq(u, v)) pairs.emplace_back(concat(v, x), Point::fail());
        }
      }
    }
    for (const auto& u : ab_points) {
      for (const auto& out : all_points(out_sig)) {
        if (rng.chance(0.1)) {
          // Downward closure on the input bundle.
          for (const auto& v : ab_points) {
            if (leq(v, u)) pairs.emplace_back(concat(v, x), out);
          }
        }
      }
    }
  }
  return make_double_shape(Rfu(in_sig, out_sig, std::move(pairs)), a.size(),
                           b.size());
}

DoubleShape random_full_double(Rng& rng) {
  Signature a{make_wire("da", 2, true)};
  Signature b{make_wire("db", 2, true)};
  Signature c = random_sig(rng, 0, 1, 2, false, "dc");
  Signature d{make_wire("dd", 2, false)};
  Signature ab = concat(a, b);
  auto a_points = all_points(a);
  auto b_points = all_points(b);
  auto c_points = all_points(c);
  auto d_points = all_points(d);

  // Per-coordinate relations, downward-closed in the input and reflexive, so
  // the product satisfies mono and both independence conditions.
  auto coord_rel = [&](const std::vector<Point>& pts) {
    std::set<std::pair<Point, Point>> rel;
    for (const auto& u : pts) rel.emplace(u, u);
    for (const auto& u : pts) {
      for (const auto& v : pts) {
        if (rng.chance(0.35)) rel.emplace(u, v);
      }
    }
    std::set<std::pair<Point, Point>> closed = rel;
    for (const auto& [u, v] : rel) {
      for (const auto& w : pts) {
        if (leq(w, u)) closed.emplace(w, v);
      }
    }
    return closed;
  };
  auto t1 = coord_rel(a_points);
  auto t2 = coord_rel(b_points);
  std::set<std::pair<Point, Point>> t3;
  for (const auto& z : c_points) {
    for (const auto& w : d_points) {
      if (rng.chance(0.5)) t3.emplace(z, w);
    }
  }
  // Fails may depend on the free input only.
  std::set<Point> f3;
  for (const auto& z : c_points) {
    if (rng.chance(0.2)) f3.insert(z);
  }

  std::vector<Rfu::Pair> pairs;
  for (const auto& z : c_points) {
    for (const auto& ua : a_points) {
      for (const auto& ub : b_points) {
        Point in = concat(concat(ua, ub), z);
        if (f3.count(z)) {
          pairs.emplace_back(in, Point::fail());
          continue;
        }
        for (const auto& [za, va] : t1) {
          if (za != ua) continue;
          for (const auto& [zb, vb] : t2) {
            if (zb != ub) continue;
            for (const auto& [zc, w] : t3) {
              if (zc != z) continue;
              pairs.emplace_back(in, concat(concat(va, vb), w));
            }
          }
        }
      }
    }
  }
  return make_double_shape(
      Rfu(concat(ab, c), concat(ab, d), std::move(pairs)), a.size(), b.size());
}

Sts random_sts(Rng& rng) {
  Signature state{make_wire("st", 2 + rng.below(2), false)};
  Signature in{make_wire("sin", 2, false)};
  Signature out{make_wire("sout", 2, false)};
  auto states = all_points(state);
  auto ins = all_points(in);
  auto outs = all_points(out);
  std::vector<Point> init;
  for (const auto& u : states) {
    if (rng.chance(0.4)) init.push_back(u);
  }
  if (init.empty()) init.push_back(states[rng.below(states.size())]);
  std::vector<Point> legal;
  std::vector<Sts::Pair> trans;
  for (const auto& u : states) {
    for (const auto& x : ins) {
      if (rng.chance(0.85)) legal.push_back(concat(u, x));
      for (const auto& u2 : states) {
        for (const auto& y : outs) {
          if (rng.chance(0.25)) {
            trans.emplace_back(concat(u, x), concat(u2, y));
          }
        }
      }
    }
  }
  return Sts(state, in, out, std::move(init), std::move(legal),
             std::move(trans));
}

std::pair<Sts, Sts> sts_refinement_pair(Rng& rng) {
  Sts s = random_sts(rng);
  auto states = all_points(s.state_sig());
  auto ins = all_points(s.in_sig());
  auto outs = all_points(s.out_sig());
  std::vector<Point> legal = s.legal();
  std::vector<Sts::Pair> trans;
  for (const auto& u : states) {
    for (const auto& x : ins) {
      bool s_legal = s.is_legal(u, x);
      if (s_legal) {
        // Shrink the successor set.
        for (const auto& [u2, y] : s.successors(u, x)) {
          if (rng.chance(0.75)) {
            trans.emplace_back(concat(u, x), concat(u2, y));
          }
        }
      } else {
        // Optionally legalize with arbitrary behavior.
        if (rng.chance(0.5)) {
          legal.push_back(concat(u, x));
          for (const auto& u2 : states) {
            for (const auto& y : outs) {
              if (rng.chance(0.25)) {
                trans.emplace_back(concat(u, x), concat(u2, y));
              }
            }
          }
        }
      }
    }
  }
  Sts t(s.state_sig(), s.in_sig(), s.out_sig(), s.init(), std::move(legal),
        std::move(trans));
  return {std::move(s), std::move(t)};
}

Spec random_spec(Rng& rng, const Signature& in_sig, const Signature& out_sig) {
  std::vector<Point> legal;
  std::vector<Spec::Pair> rel;
  auto outs = all_points(out_sig);
  for (const auto& x : all_points(in_sig)) {
    if (!rng.chance(0.8)) continue;
    legal.push_back(x);
    for (const auto& y : outs) {
      if (rng.chance(0.3)) rel.emplace_back(x, y);
    }
  }
  return Spec(in_sig, out_sig, std::move(legal), std::move(rel));
}

}  // namespace feedkit::testkit
