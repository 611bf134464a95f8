#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "qgt/error.hpp"

namespace qgt {

enum class FieldKind { Rationals, Prime };

struct Field {
  FieldKind kind = FieldKind::Rationals;
  uint32_t p = 0;

  static Field rationals() { return Field{FieldKind::Rationals, 0}; }
  static Field prime(uint32_t p);

  bool operator==(const Field&) const = default;
  std::string name() const {
    return kind == FieldKind::Rationals ? "Q" : "F" + std::to_string(p);
  }
};

// Exact field element: an arbitrary-precision rational, always reduced with
// positive denominator, or a residue in [0, p) for a prime p.
class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}

  static Scalar of(const Field& f, long n);
  static Scalar zero(const Field& f) { return of(f, 0); }
  static Scalar one(const Field& f) { return of(f, 1); }
  static Scalar rational(const mpq_class& q);
  static Scalar residue(uint32_t v, uint32_t p);
  static Scalar parse(const Field& f, const std::string& text);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  bool negative() const;  // rationals only; residues are never negative
  Scalar abs() const { return negative() ? -*this : *this; }

  std::string str() const;

  const mpq_class& rat() const;

 private:
  struct Fp {
    uint32_t v;
    uint32_t p;
  };
  std::variant<mpq_class, Fp> v_;

  const Fp* fp() const { return std::get_if<Fp>(&v_); }
  static void check_same(const Scalar& a, const Scalar& b);
};

}  // namespace qgt
