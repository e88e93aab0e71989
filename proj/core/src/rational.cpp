// Copyright 2026 the conegap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conegap/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace conegap {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw std::invalid_argument("Rat: zero denominator");
  value_ = mpq_class(num) / mpq_class(den);
  value_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::invalid_argument("Rat: division by zero");
  value_ /= o.value_;
  return *this;
}

Rat Rat::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("Rat: non-finite double");
  return Rat(mpq_class(x));  // mpq_set_d is exact
}

Rat Rat::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rat: empty string");
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("Rat: cannot parse '" + text + "'");
  }
  if (sgn(q.get_den()) == 0) {
    throw std::invalid_argument("Rat: zero denominator in '" + text + "'");
  }
  q.canonicalize();
  return Rat(q);
}

std::string Rat::str() const {
  if (den() == 1) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

namespace {

// |p/q - x| as an exact rational, for comparing approximation candidates.
mpq_class abs_err(const mpz_class& p, const mpz_class& q, const mpq_class& x) {
  mpq_class v(p, q);
  v.canonicalize();
  v -= x;
  return ::abs(v);
}

}  // namespace

Rat rationalize(double x, long max_den) {
  if (max_den < 1) throw std::invalid_argument("rationalize: max_den must be >= 1");
  const Rat exact = Rat::from_double(x);
  if (exact.den() <= max_den) return exact;

  const mpq_class target = exact.raw();
  const mpz_class bound(max_den);

  // Continued fraction of the exact dyadic value. Convergents h/k; stop when
  // the denominator would exceed the bound, then compare the last convergent
  // against the best admissible semiconvergent.
  mpz_class h_prev = 0, k_prev = 1;  // h_{-2}/k_{-2}
  mpz_class h = 1, k = 0;            // h_{-1}/k_{-1}; first step yields a0/1
  mpz_class num = exact.num(), den = exact.den();

  while (true) {
    mpz_class a, rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > bound) {
      // Largest t with t*k + k_prev <= bound gives the best semiconvergent.
      mpz_class t = (bound - k_prev) / k;
      mpz_class sh = t * h + h_prev;
      mpz_class sk = t * k + k_prev;
      if (sk == 0) return Rat(h, k);
      mpq_class err_conv = abs_err(h, k, target);
      mpq_class err_semi = abs_err(sh, sk, target);
      if (err_semi < err_conv) return Rat(sh, sk);
      if (err_semi == err_conv && sk < k) return Rat(sh, sk);
      return Rat(h, k);
    }
    h_prev = h; k_prev = k;
    h = h_next; k = k_next;
    if (rem == 0) return Rat(h, k);  // terminated exactly (den <= bound)
    num = den;
    den = rem;
  }
}

Rat sqrt_upper_bound(const Rat& x, unsigned precision_bits) {
  if (x.sign() < 0) throw std::invalid_argument("sqrt_upper_bound: negative input");
  if (x.is_zero()) return Rat(0);
  // sqrt(p/q) = sqrt(p*q)/q; floor-sqrt of the scaled integer gives the bound.
  mpz_class pq = x.num() * x.den();
  mpz_class scaled = pq << (2 * precision_bits);
  mpz_class root = sqrt(scaled);  // floor
  root += 1;
  mpz_class denom = x.den() << precision_bits;
  return Rat(root, denom);
}

}  // namespace conegap
