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

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "gcm/gmap.hpp"
#include "gcm/gpoints.hpp"

namespace gcm {

/// Dense row-major matrix of jets.
struct JetMatrix {
  int rows = 0, cols = 0;
  std::vector<Jet> a;

  JetMatrix() = default;
  JetMatrix(int r, int c, const Jet& fill) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), fill) {}
  static JetMatrix identity(int n, const Jet& like);

  Jet& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  const Jet& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }

  Eigen::MatrixXd value() const;
  JetMatrix transpose() const;
  /// Largest operator 2-norm of the matrix of partials d^alpha over |alpha| = k.
  double norm_k(int k) const;
  JetVec apply(std::span<const Jet> v) const;
  Vec apply(const Vec& v) const;

  friend JetMatrix operator*(const JetMatrix& x, const JetMatrix& y);
  static JetMatrix kron(const JetMatrix& x, const JetMatrix& y);
};

/// Entrywise chain rule: p expanded at values(inner), evaluated along inner.
JetMatrix compose_taylor(const JetMatrix& p, std::span<const Jet> inner);

/// Largest operator norm over |alpha| = k of d^alpha(x - y), with entries below
/// the noise floor cleared.
double diff_norm_k(const JetMatrix& x, const JetMatrix& y, int k, double noise_floor);

enum class BundleKind { Trivial, Tangent, Cotangent, Tensor };

/// Vector bundle given by vb-transition matrix fields over a base atlas.
class VectorBundle {
 public:
  /// phi_ab(x) for x in chart a: fiber coordinates change as xi_b = phi_ab xi_a.
  using TransitionFn = std::function<JetMatrix(int a, int b, std::span<const Jet> x)>;
  using FiberMetricFn = std::function<Eigen::MatrixXd(int chart, std::span<const double> x)>;

  VectorBundle(std::string name, Manifold base, int fiber_dim, TransitionFn phi, FiberMetricFn metric,
               BundleKind kind, int r = 0, int s = 0);

  static std::shared_ptr<const VectorBundle> trivial(const Manifold& base, int fiber_dim);
  static std::shared_ptr<const VectorBundle> tangent(const Manifold& base);
  static std::shared_ptr<const VectorBundle> cotangent(const Manifold& base);
  /// Tensors with r contravariant and s covariant slots, r + s <= 4.
  static std::shared_ptr<const VectorBundle> tensor(const Manifold& base, int r, int s);

  const std::string& name() const { return name_; }
  const Manifold& base() const { return base_; }
  const AtlasPtr& atlas() const { return base_.atlas; }
  int fiber_dim() const { return fiber_dim_; }
  BundleKind kind() const { return kind_; }
  int r() const { return r_; }
  int s() const { return s_; }
  bool has_fiber_metric() const { return static_cast<bool>(metric_); }

  JetMatrix transition(int a, int b, std::span<const Jet> x) const;
  Eigen::MatrixXd transition(int a, int b, std::span<const double> x) const;
  Eigen::MatrixXd fiber_metric(int chart, std::span<const double> x) const;
  /// Largest |phi_bc phi_ab - phi_ac| and |phi_ba phi_ab - I| over sampled overlaps.
  double cocycle_error(int samples = 100) const;

 private:
  std::string name_;
  Manifold base_;
  int fiber_dim_;
  TransitionFn phi_;
  FiberMetricFn metric_;
  BundleKind kind_;
  int r_, s_;
};

using BundlePtr = std::shared_ptr<const VectorBundle>;

struct BundlePoint {
  Point base;
  Vec fiber;  // coordinates in the vb-chart over base.chart
};

/// Same bundle point in vb-chart b, or nullopt if the base is not covered.
std::optional<BundlePoint> to_vb_chart(const VectorBundle& E, const BundlePoint& e, int b);

/// |xi|_h from the fiber metric; the coordinate norm when there is none,
/// unless strict chart independence is requested (MissingFiberMetric).
double fiber_norm(const VectorBundle& E, const BundlePoint& e, bool strict = false);

/// Base part and matrix part of a vb-homomorphism at one point.
struct VBHomValue {
  ChartJets base;    // image in a dst base chart c
  JetMatrix matrix;  // dst fiber (vb-chart c) x src fiber (vb-chart a)
};

class VBHomNet {
 public:
  using Fn = std::function<std::optional<VBHomValue>(double eps, int src_chart, std::span<const Jet> x)>;

  VBHomNet(BundlePtr src, BundlePtr dst, Fn fn, std::string tag);

  const BundlePtr& src() const { return src_; }
  const BundlePtr& dst() const { return dst_; }
  const std::string& tag() const { return tag_; }
  const MapNet& base_net() const { return base_; }

  std::optional<VBHomValue> eval(double eps, int src_chart, std::span<const Jet> x) const;
  /// Representative into dst vb-chart b.
  std::optional<VBHomValue> local(double eps, int src_chart, int b, std::span<const Jet> x) const;
  std::optional<BundlePoint> apply(double eps, const BundlePoint& e) const;

 private:
  BundlePtr src_, dst_;
  Fn fn_;
  std::string tag_;
  MapNet base_;
};

/// Tangent map: base part u, matrix part the Jacobian of the local representative.
VBHomNet tangent(const MapNet& u, BundlePtr TX, BundlePtr TY);

Verdict check_vbhom_moderate(const VBHomNet& u, const CompactRegion& L, const Config& cfg);
/// h is the metric on the base of the target bundle.
Verdict check_vbhom_equiv(const VBHomNet& u, const VBHomNet& v, const CompactRegion& L, const RiemannianMetric& h,
                          const Config& cfg, bool order0 = false);

/// sup_{p in K} |T_p u_eps|_{g,h}, the norm of the tangent map between the
/// Riemannian metrics of source and target.
SupSeries tangent_norm_series(const MapNet& u, const CompactRegion& K, const RiemannianMetric& g,
                              const RiemannianMetric& h, const Config& cfg);

/// Net of bundle points with compactly supported base.
struct VBPoint {
  BundlePtr bundle;
  std::function<BundlePoint(double)> at;
  CompactRegion support;
  std::string tag;
  std::optional<OrderEstimate> growth;

  static VBPoint from_net(BundlePtr bundle, std::function<BundlePoint(double)> at, const Config& cfg, std::string tag);
  static VBPoint zero_over(BundlePtr bundle, const GenPoint& p, std::string tag);
  GenPoint base() const;
  SupSeries norm_series(const Config& cfg) const;
  /// judge_moderate of the fiber norms; the estimate is stored as growth.
  Verdict check_growth(const Config& cfg);
};

/// Conjunction of base points_equal and negligible fiber-coordinate
/// differences in a shared vb-chart.
Verdict vbpoints_equal(const VBPoint& e, const VBPoint& f, const RiemannianMetric& g, const Config& cfg);

/// Representative of e sitting exactly over p: fiber coordinates of e_eps in a
/// vb-chart containing both p_eps and the base of e_eps.
VBPoint align_representative(const VBPoint& e, const GenPoint& p, const RiemannianMetric& g, const Config& cfg);

/// e + r e2 fiberwise. Bases must coincide on the small-eps grid (BaseMismatch).
VBPoint fiber_combine(const VBPoint& e, const VBPoint& e2, const GenNumber& r, const Config& cfg);

/// Section given by coefficient fields per vb-chart.
class SectionNet {
 public:
  using Fn = std::function<JetVec(double eps, int chart, std::span<const Jet> x)>;

  SectionNet(BundlePtr bundle, Fn fn, std::string tag);
  /// Section written in one home chart and transported to the others.
  static SectionNet from_chart(BundlePtr bundle, int home, Fn fn, std::string tag);

  const BundlePtr& bundle() const { return bundle_; }
  const std::string& tag() const { return tag_; }
  JetVec eval(double eps, int chart, std::span<const Jet> x) const { return fn_(eps, chart, x); }
  Vec value(double eps, const Point& p) const;

 private:
  BundlePtr bundle_;
  Fn fn_;
  std::string tag_;
};

Verdict check_section_moderate(const SectionNet& s, const CompactRegion& K, const Config& cfg);
VBPoint section_eval(const SectionNet& s, const GenPoint& p, const Config& cfg);
/// Throws SingleChartMissing unless the base net is single-chart on e's support.
VBPoint vbhom_eval(const VBHomNet& v, const VBPoint& e, const Config& cfg);

struct SectionWitness {
  GenPoint witness;
  Verdict evaluation;    // vbpoints_equal(s(p), 0)
  Verdict negligibility; // sup_K |s_eps|
};

std::optional<SectionWitness> section_zero_witness(const SectionNet& s, const CompactRegion& K,
                                                   const RiemannianMetric& g, const Config& cfg, int trials = 0);

/// Full contraction s(omega_1..omega_r, xi_1..xi_s) at p_eps.
GenNumber tensor_insert(const SectionNet& t, const std::vector<SectionNet>& omegas, const std::vector<SectionNet>& xis,
                        const GenPoint& p);

}  // namespace gcm
