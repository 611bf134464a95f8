#include "qgt/scalar.hpp"

#include <cctype>

namespace qgt {

namespace {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint32_t mod_inverse(uint32_t a, uint32_t p) {
  if (a == 0) fail("DivisionByZero", "inverse of 0 mod " + std::to_string(p));
  int64_t t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    int64_t q = r / newr;
    int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

uint32_t mod_of_mpz(const mpz_class& z, uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<uint32_t>(r.get_ui());
}

}  // namespace

Field Field::prime(uint32_t p) {
  if (!is_prime_u32(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  return Field{FieldKind::Prime, p};
}

Scalar Scalar::of(const Field& f, long n) {
  if (f.kind == FieldKind::Rationals) return rational(mpq_class(n));
  int64_t r = n % static_cast<int64_t>(f.p);
  if (r < 0) r += f.p;
  return residue(static_cast<uint32_t>(r), f.p);
}

Scalar Scalar::rational(const mpq_class& q) {
  Scalar s;
  mpq_class c = q;
  c.canonicalize();
  s.v_ = c;
  return s;
}

Scalar Scalar::residue(uint32_t v, uint32_t p) {
  Scalar s;
  s.v_ = Fp{static_cast<uint32_t>(v % p), p};
  return s;
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) fail("ParseError", "empty scalar");
  std::string num = t, den = "1";
  if (auto slash = t.find('/'); slash != std::string::npos) {
    num = t.substr(0, slash);
    den = t.substr(slash + 1);
  }
  auto check_int = [&](const std::string& s) {
    if (s.empty()) fail("ParseError", "bad scalar '" + text + "'");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail("ParseError", "bad scalar '" + text + "'");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        fail("ParseError", "bad scalar '" + text + "'");
  };
  check_int(num);
  check_int(den);
  mpz_class n(num), d(den);
  if (d == 0) fail("ParseError", "zero denominator in '" + text + "'");
  if (f.kind == FieldKind::Rationals) {
    mpq_class q(n, d);
    q.canonicalize();
    return rational(q);
  }
  uint32_t dn = mod_of_mpz(d, f.p);
  if (dn == 0)
    fail("ParseError", "denominator of '" + text + "' vanishes mod " + std::to_string(f.p));
  uint64_t r = static_cast<uint64_t>(mod_of_mpz(n, f.p)) * mod_inverse(dn, f.p) % f.p;
  return residue(static_cast<uint32_t>(r), f.p);
}

Field Scalar::field() const {
  if (const Fp* e = fp()) return Field{FieldKind::Prime, e->p};
  return Field::rationals();
}

bool Scalar::is_zero() const {
  if (const Fp* e = fp()) return e->v == 0;
  return std::get<mpq_class>(v_) == 0;
}

bool Scalar::is_one() const {
  if (const Fp* e = fp()) return e->v == 1;
  return std::get<mpq_class>(v_) == 1;
}

void Scalar::check_same(const Scalar& a, const Scalar& b) {
  if (!(a.field() == b.field()))
    fail("FieldMismatch", a.field().name() + " vs " + b.field().name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(*this, o);
  if (const Fp* e = fp()) {
    uint64_t s = static_cast<uint64_t>(e->v) + o.fp()->v;
    return residue(static_cast<uint32_t>(s % e->p), e->p);
  }
  return rational(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(*this, o);
  if (const Fp* e = fp()) {
    uint64_t s = static_cast<uint64_t>(e->v) * o.fp()->v;
    return residue(static_cast<uint32_t>(s % e->p), e->p);
  }
  return rational(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (const Fp* e = fp())
    return residue(e->v == 0 ? 0 : e->p - e->v, e->p);
  return rational(-std::get<mpq_class>(v_));
}

Scalar Scalar::inverse() const {
  if (const Fp* e = fp()) return residue(mod_inverse(e->v, e->p), e->p);
  const mpq_class& q = std::get<mpq_class>(v_);
  if (q == 0) fail("DivisionByZero", "inverse of 0");
  return rational(1 / q);
}

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -e : e;
  Scalar acc = one(field());
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (const Fp* e = fp()) {
    const Fp* f = o.fp();
    return f && e->p == f->p && e->v == f->v;
  }
  if (o.fp()) return false;
  return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
}

bool Scalar::negative() const {
  if (fp()) return false;
  return std::get<mpq_class>(v_) < 0;
}

std::string Scalar::str() const {
  if (const Fp* e = fp()) return std::to_string(e->v);
  return std::get<mpq_class>(v_).get_str();
}

const mpq_class& Scalar::rat() const {
  if (fp()) fail("FieldMismatch", "rational value requested from prime-field element");
  return std::get<mpq_class>(v_);
}

}  // namespace qgt
