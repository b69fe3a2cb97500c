// SPDX-License-Identifier: Apache-2.0
#include "osrcbem/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <regex>

#include "osrcbem/mie.hpp"

namespace osrcbem {

Discretization discretize(TriangleMesh mesh) {
  Discretization d;
  d.mesh = std::move(mesh);
  d.topo = build_edge_topology(d.mesh);
  d.rwg = build_space(d.mesh, d.topo, SpaceKind::RWG);
  d.snc = build_space(d.mesh, d.topo, SpaceKind::SNC);
  d.p1 = build_space(d.mesh, d.topo, SpaceKind::P1);
  d.stats = mesh_stats(d.mesh);
  return d;
}

PreconditionerSpec parse_preconditioner(const std::string& text) {
  static const std::regex pattern(R"(\s*(none|osrc-b|osrc-a)\s*(?:\(\s*(\d+)\s*\))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ArgumentError("unknown preconditioner '" + text + "'");
  PreconditionerSpec spec;
  const std::string name = m[1];
  if (name == "none") {
    spec.kind = PreconditionerKind::None;
  } else if (name == "osrc-b") {
    spec.kind = PreconditionerKind::OsrcB;
  } else {
    spec.kind = PreconditionerKind::OsrcA;
  }
  if (m[2].matched) {
    if (spec.kind != PreconditionerKind::OsrcA) throw ArgumentError("only osrc-a takes a term count: " + text);
    spec.n_terms = std::stoi(m[2]);
    if (spec.n_terms < 1) throw ArgumentError("osrc-a needs at least one Padé term");
  }
  return spec;
}

std::string to_string(const PreconditionerSpec& spec) {
  switch (spec.kind) {
    case PreconditionerKind::None:
      return "none";
    case PreconditionerKind::OsrcB:
      return "osrc-b";
    case PreconditionerKind::OsrcA:
      break;
  }
  return "osrc-a(" + std::to_string(spec.n_terms) + ")";
}

SparseOperatorSet osrc_operators(const Discretization& disc, double kappa, const DampingSpec& damping) {
  auto kw = build_damped_wavenumber(kappa, estimate_curvature(disc.mesh, damping.radius));
  kw.constant_per_element = damping.assembly.constant_per_element;
  return assemble_sparse_set(disc.mesh, disc.topo, disc.snc, disc.p1, kw, damping.assembly);
}

PreconditionerSetup setup_preconditioner(const Discretization& disc, double kappa, const PreconditionerSpec& spec,
                                         const DampingSpec& damping) {
  PreconditionerSetup out;
  if (spec.kind == PreconditionerKind::None) return out;
  const Stopwatch clock;
  const auto ops = osrc_operators(disc, kappa, damping);
  if (spec.kind == PreconditionerKind::OsrcA) {
    out.preconditioner.emplace(ops, compute_pade(spec.n_terms, spec.alpha), OsrcVariant::A);
  } else {
    out.preconditioner.emplace(ops, PadeCoefficients{}, OsrcVariant::B);
  }
  out.seconds = clock.seconds();
  return out;
}

EfieSolve solve_efie(const MatrixC& S, const VectorC& rhs, const OsrcPreconditioner* pre, const GmresOptions& opts) {
  const LinearOperator op_s = matrix_operator(S);
  EfieSolve out;
  if (pre == nullptr) {
    auto res = gmres(op_s, rhs, opts);
    out.x = std::move(res.x);
    out.report = std::move(res.report);
    return out;
  }
  if (pre->size() != static_cast<std::size_t>(S.rows())) throw DimensionError("preconditioner size mismatch");
  const LinearOperator op_p{pre->size(), [pre](const VectorC& y) { return pre->apply(y); }};
  auto res = gmres(compose(op_p, op_s), op_p(rhs), opts);
  out.x = std::move(res.x);
  out.report = std::move(res.report);
  return out;
}

std::vector<double> angle_grid(int count) {
  if (count < 2) throw ArgumentError("angle grid needs at least two points");
  std::vector<double> theta(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) theta[i] = kPi * i / (count - 1);
  return theta;
}

std::vector<double> bistatic_rcs(const Discretization& disc, const PlaneWave& wave, const VectorC& u,
                                 const std::vector<double>& theta, double phi) {
  const auto F = scattered_far_field(disc.mesh, disc.rwg, wave, u, directions_in_plane(theta, phi));
  std::vector<double> out;
  out.reserve(F.size());
  for (const auto& f : F) out.push_back(rcs(f, wave.p));
  return out;
}

RcsComparison compare_rcs(const std::vector<double>& computed, const std::vector<double>& reference) {
  if (computed.size() != reference.size() || computed.empty()) throw DimensionError("RCS curves differ in length");
  double num = 0.0;
  double den = 0.0;
  RcsComparison c;
  for (std::size_t i = 0; i < computed.size(); ++i) {
    num += (computed[i] - reference[i]) * (computed[i] - reference[i]);
    den += reference[i] * reference[i];
    c.max_db = std::max(c.max_db, std::abs(to_db(computed[i]) - to_db(reference[i])));
  }
  c.relative_l2 = std::sqrt(num / den);
  return c;
}

double relative_spread(const std::vector<Complex>& values) {
  if (values.empty()) throw ArgumentError("spread of an empty point cloud");
  const Complex mean = std::accumulate(values.begin(), values.end(), Complex(0.0)) / double(values.size());
  double var = 0.0;
  for (const auto& v : values) var += std::norm(v - mean);
  return std::sqrt(var / double(values.size())) / std::abs(mean);
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) throw ArgumentError("Hausdorff distance of an empty point cloud");
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

namespace {
double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}
}  // namespace

Stopwatch::Stopwatch() : start_(now_seconds()) {}

double Stopwatch::seconds() const { return now_seconds() - start_; }

}  // namespace osrcbem
