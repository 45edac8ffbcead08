/*
 * Copyright 2026 The gcolombeau Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Truncated multivariate Taylor polynomials ("jets").
//
// A Jet in n variables of order K stores c_alpha = (d^alpha f)(x0) / alpha!
// for every multi-index |alpha| <= K. Arithmetic and the elementary functions
// propagate these coefficients exactly, which gives every closed-form local
// map an exact derivative oracle up to K.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace gcm {

/// Multi-index table shared by all jets with the same (nvars, order).
class JetLayout {
 public:
  static std::shared_ptr<const JetLayout> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return degree_.size(); }
  int degree(std::size_t i) const { return degree_[i]; }
  const std::vector<int>& multi_index(std::size_t i) const { return index_[i]; }
  /// Position of a multi-index, or -1 when |alpha| > order.
  int find(std::span<const int> alpha) const;
  /// Product table: for each pair (i, j) with deg(i)+deg(j) <= order.
  struct Term {
    int i, j, k;
  };
  const std::vector<Term>& products() const { return products_; }
  /// alpha! for entry i.
  double factorial(std::size_t i) const { return factorial_[i]; }

  JetLayout(int nvars, int order);

 private:
  int nvars_;
  int order_;
  std::vector<int> degree_;
  std::vector<std::vector<int>> index_;
  std::vector<double> factorial_;
  std::vector<Term> products_;
};

class Jet {
 public:
  Jet() = default;
  /// Constant jet in the given layout.
  Jet(std::shared_ptr<const JetLayout> layout, double value);
  /// A bare scalar (0 variables, order 0).
  static Jet constant(double value);
  /// x0 + h_i : the i-th seeded coordinate.
  static Jet variable(std::shared_ptr<const JetLayout> layout, int i, double x0);

  double value() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }
  const std::shared_ptr<const JetLayout>& layout() const { return layout_; }
  int nvars() const { return layout_ ? layout_->nvars() : 0; }
  int order() const { return layout_ ? layout_->order() : 0; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  /// Partial derivative d^alpha f (not divided by alpha!).
  double partial(std::span<const int> alpha) const;
  /// Largest |d^alpha f| over |alpha| == k; 0 when k exceeds the order.
  double max_partial(int k) const;
  /// d/dx_i as a jet of order one lower.
  Jet derivative(int i) const;
  /// Same expansion truncated to a lower order.
  Jet truncated(int order) const;
  /// Shift of the constant term, leaving all derivatives unchanged.
  Jet shifted(double delta) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator+=(double c);
  Jet& operator*=(double c);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double c) { return a += c; }
  friend Jet operator+(double c, Jet a) { return a += c; }
  friend Jet operator-(Jet a, double c) { return a += -c; }
  friend Jet operator-(double c, const Jet& a);
  friend Jet operator*(Jet a, double c) { return a *= c; }
  friend Jet operator*(double c, Jet a) { return a *= c; }
  friend Jet operator/(Jet a, double c) { return a *= 1.0 / c; }
  friend Jet operator/(double c, const Jet& a);
  friend Jet operator-(Jet a) { return a *= -1.0; }

 private:
  friend Jet compose_series(const Jet& a, std::span<const double> series);
  void adopt(const Jet& o);

  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;
};

using JetVec = std::vector<Jet>;

/// f(a) where series[j] are the Taylor coefficients of f at a.value().
Jet compose_series(const Jet& a, std::span<const double> series);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tanh(const Jet& a);
Jet atan(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double p);
Jet recip(const Jet& a);

/// Seeds x0 as n independent variables of the given order.
JetVec seed(std::span<const double> x0, int order);
/// Constant parts of a jet vector.
std::vector<double> values(std::span<const Jet> v);

/// Evaluates the Taylor polynomial p (in variables h, expanded at x0) at
/// h = inner - x0, where x0 is the constant part of inner. This is the chain
/// rule on jets: p describes f near x0, inner describes x(t).
Jet compose_taylor(const Jet& p, std::span<const Jet> inner);

}  // namespace gcm
