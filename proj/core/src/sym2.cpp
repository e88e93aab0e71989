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

#include "conegap/sym2.hpp"

#include <algorithm>

namespace conegap {

bool psd2_check(const Sym2& s) {
  return s.a11.sign() >= 0 && s.a22.sign() >= 0 && s.det().sign() >= 0;
}

Rat psd_shift_bound(const Sym2& s) {
  Rat m(0);
  m = std::max(m, -s.a11);
  m = std::max(m, -s.a22);
  return m + s.a12.abs();
}

Rat min_psd_shift(const Sym2& s, const Rat& scale) {
  // s + t*scale*I is PSD iff t clears the larger root of
  //   (a11 + t*c)(a22 + t*c) - a12^2 >= 0,
  // whose discriminant (a11 - a22)^2 + 4 a12^2 is always nonnegative. The
  // root also dominates the diagonal conditions, so it alone suffices.
  const Rat c = scale;
  const Rat diff = s.a11 - s.a22;
  const Rat disc = diff * diff + Rat(4) * s.a12 * s.a12;
  const Rat root = (-(s.a11 + s.a22) + sqrt_upper_bound(disc)) / (Rat(2) * c);
  return std::max(Rat(0), root);
}

Rat trace_inner(const Sym2& x, const Sym2& y) {
  return x.a11 * y.a11 + Rat(2) * x.a12 * y.a12 + x.a22 * y.a22;
}

Sym2d to_approx(const Sym2& s) {
  return {s.a11.to_double(), s.a12.to_double(), s.a22.to_double()};
}

Sym2 rationalize(const Sym2d& s, long max_den) {
  return {rationalize(s.a11, max_den), rationalize(s.a12, max_den),
          rationalize(s.a22, max_den)};
}

}  // namespace conegap
