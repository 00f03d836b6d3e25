#include "ultranorm/rational.hpp"

#include <stdexcept>

namespace ultranorm {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto check_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!check_int(num) || !check_int(den)) throw std::invalid_argument("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (sgn(d) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

long valuation(const Integer& x, unsigned long p) {
  if (sgn(x) == 0) throw std::domain_error("valuation of zero");
  Integer rest;
  Integer prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(const Rational& x, unsigned long p) {
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned long next_prime(unsigned long n) {
  unsigned long c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

Rational pow(const Rational& x, long e) {
  if (e < 0) {
    if (sgn(x) == 0) throw std::domain_error("negative power of zero");
    Rational inv = 1 / x;
    return pow(inv, -e);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

std::vector<unsigned long> prime_support(const Integer& x) {
  if (sgn(x) == 0) throw std::domain_error("prime support of zero");
  Integer n = abs(x);
  std::vector<unsigned long> out;
  for (unsigned long d = 2; Integer(d) * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      out.push_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
    }
  }
  if (n > 1) out.push_back(n.get_ui());
  return out;
}

}  // namespace ultranorm
