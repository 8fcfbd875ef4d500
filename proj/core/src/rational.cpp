#include "halo/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace halo {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

static bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational Rational::parse(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s, den = "1";
  if (auto pos = s.find('/'); pos != std::string_view::npos) {
    num = s.substr(0, pos);
    den = s.substr(pos + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("Rational: malformed scalar '" + std::string(s) + "'");
  mpz_class n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(s) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  if (neg) q = -q;
  return Rational(q);
}

Rational Rational::from_double(double d) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), d);
  return Rational(q);
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::pow_int(long e) const {
  if (e == 0) return Rational(1);
  if (sign() == 0 && e < 0) throw std::domain_error("Rational: 0 to negative power");
  mpq_class base = e > 0 ? v_ : mpq_class(1 / v_);
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
  out.canonicalize();
  return Rational(out);
}

long Rational::floor_long() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("Rational: floor outside long range");
  return q.get_si();
}

}  // namespace halo
