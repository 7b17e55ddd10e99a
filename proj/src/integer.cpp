#include "mltoric/integer.hpp"

#include "mltoric/errors.hpp"

namespace mltoric {

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw DomainError("division by zero");
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  if (b == 0) throw DomainError("division by zero");
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  if (m == 0) throw DomainError("modulus zero");
  Integer r;
  Integer am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer factorial(std::size_t n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace mltoric
