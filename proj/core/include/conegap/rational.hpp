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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace conegap {

// Exact rational scalar. Always stored in lowest terms with a positive
// denominator; every verification-path computation in this project runs on
// these, with zero tolerance.
class Rat {
 public:
  Rat() : value_(0) {}
  Rat(long n) : value_(n) {}  // NOLINT: implicit by design, scalars everywhere
  Rat(int n) : value_(n) {}   // NOLINT
  Rat(long num, long den);
  explicit Rat(const mpz_class& n) : value_(n) {}
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  // Exact conversion: every finite double is a dyadic rational.
  static Rat from_double(double x);

  // Parses "p/q" or "p" with optional sign. Throws std::invalid_argument.
  static Rat parse(const std::string& text);

  const mpz_class& num() const { return value_.get_num(); }
  const mpz_class& den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  double to_double() const { return value_.get_d(); }
  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  Rat abs() const { return Rat(mpq_class(::abs(value_))); }

  std::string str() const;

  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.value_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.value_ >= b.value_; }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

// Best rational approximation of x with denominator <= max_den, computed from
// the continued fraction of the exact dyadic value of x. Ties between the
// final convergent and the best semiconvergent resolve to the smaller
// denominator.
Rat rationalize(double x, long max_den);

// Rational r with r >= sqrt(x) and r - sqrt(x) <= 2^-precision_bits * max(1, sqrt(x)).
// Used where an exact PSD shift must dominate an irrational eigenvalue bound.
Rat sqrt_upper_bound(const Rat& x, unsigned precision_bits = 32);

}  // namespace conegap
