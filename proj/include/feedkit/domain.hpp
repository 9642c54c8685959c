#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace feedkit {

/// Raised on contract violations (bad signatures, malformed points, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A wire value: an index into the wire domain's atom list, or kBot for the
/// unknown value of a lifted wire.
using Value = std::int16_t;
inline constexpr Value kBot = -1;

/// A finite value domain. Atom order is fixed at declaration and is used only
/// for deterministic output, never for the CPO order (which is flat).
class WireDomain {
 public:
  static constexpr std::size_t kDefaultAtomCap = 64;

  WireDomain(std::string name, std::vector<std::string> atoms, bool lifted,
             std::size_t atom_cap = kDefaultAtomCap);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  /// Whether the unknown value belongs to this wire's carrier.
  bool lifted() const { return lifted_; }
  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t carrier_size() const { return atoms_.size() + (lifted_ ? 1 : 0); }

  /// Index of a named atom; throws on unknown names.
  Value atom(const std::string& atom_name) const;
  const std::string& atom_name(Value v) const;

 private:
  std::string name_;
  std::vector<std::string> atoms_;
  bool lifted_;
};

using WireRef = std::shared_ptr<const WireDomain>;

/// An ordered list of wire domains. May be empty (the unit signature, whose
/// only point is the empty tuple).
using Signature = std::vector<WireRef>;

bool same_wire(const WireDomain& a, const WireDomain& b);
bool same_signature(const Signature& a, const Signature& b);
Signature concat(const Signature& a, const Signature& b);
Signature slice(const Signature& s, std::size_t begin, std::size_t end);

/// A point is either the fail outcome (•) or a tuple of lifted values over
/// some signature. Fail carries no payload and sorts after every tuple.
class Point {
 public:
  Point() = default;  // the empty tuple ()

  static Point fail();
  static Point tuple(std::vector<Value> values);

  bool is_fail() const { return fail_; }
  /// Values of a proper tuple; throws on fail.
  const std::vector<Value>& values() const;
  std::size_t arity() const;

  friend std::strong_ordering operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  bool fail_ = false;
  std::vector<Value> vals_;
};

/// The tuple (⊥,...,⊥). Rejects signatures with any non-lifted wire.
Point bottom(const Signature& sig);

/// Componentwise flat-CPO order on proper tuples of equal arity.
/// Fail arguments are rejected; the order is not defined on •.
bool leq(const Point& a, const Point& b);
bool lt(const Point& a, const Point& b);

/// True iff no component is unknown. Fail is rejected.
bool maximal(const Point& a);

/// Number of lifted wires; every strictly increasing chain of tuples over
/// sig has at most chain_bound(sig)+1 elements.
std::size_t chain_bound(const Signature& sig);

/// Structural validity of a proper point against a signature.
bool conforms(const Point& p, const Signature& sig);
void require_conforms(const Point& p, const Signature& sig, const char* what);

/// All proper points of a signature in canonical (sorted) order.
std::vector<Point> all_points(const Signature& sig);

Point concat(const Point& a, const Point& b);
/// Splits a proper point into its first k values and the rest.
std::pair<Point, Point> split(const Point& p, std::size_t k);

std::string value_text(const WireDomain& w, Value v);
std::string point_text(const Signature& sig, const Point& p);
/// Inverse of point_text for proper tuples, e.g. "(bot,false)". Throws on
/// malformed input.
Point parse_point(const Signature& sig, const std::string& text);

}  // namespace feedkit
