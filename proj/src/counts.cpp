#include "cohwit/counts.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cohwit/parallel.hpp"

namespace cohwit {

namespace {

/// Orthonormal basis whose first vector is v (Householder completion).
CMatrix completed_basis(const CVector& v) {
  const Eigen::Index d = v.size();
  const Complex v0 = v(0);
  const Complex ph = std::abs(v0) > 0 ? v0 / std::abs(v0) : Complex(1.0);
  CVector e0 = CVector::Zero(d);
  e0(0) = 1.0;
  CVector w = v - ph * e0;
  CMatrix h = CMatrix::Identity(d, d);
  if (w.norm() > 1e-14) {
    w.normalize();
    h -= 2.0 * w * w.adjoint();
  }
  CMatrix b = h;
  b.col(0) = v;
  return b;
}

CountRecord make_record(std::vector<std::size_t> counts, std::size_t trials) {
  CountRecord rec;
  rec.total_trials = trials;
  rec.counts = std::move(counts);
  for (std::size_t k : rec.counts) {
    rec.estimated_probability.push_back(static_cast<double>(k) / static_cast<double>(trials));
    rec.sigma_c.push_back(std::sqrt(static_cast<double>(k)) / static_cast<double>(trials));
  }
  return rec;
}

std::vector<double> port_probabilities(const PureState& prep, const PureState& meas) {
  if (prep.dim() != meas.dim()) throw ValidationError("overlap_via_counts: dimension mismatch");
  const CMatrix b = completed_basis(meas.amplitudes());
  const CVector amp = b.adjoint() * prep.amplitudes();
  std::vector<double> p(static_cast<std::size_t>(amp.size()));
  for (Eigen::Index k = 0; k < amp.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(amp(k));
  p[0] = overlap(prep, meas);
  return p;
}

std::vector<std::size_t> multinomial(std::size_t trials, const std::vector<double>& p, Engine& rng) {
  std::vector<std::size_t> out(p.size(), 0);
  std::size_t left = trials;
  double mass = 1.0;
  for (std::size_t k = 0; k + 1 < p.size() && left > 0; ++k) {
    const double q = mass > 0.0 ? std::clamp(p[k] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::size_t> bin(left, q);
    out[k] = bin(rng);
    left -= out[k];
    mass -= p[k];
  }
  if (!p.empty()) out.back() += left;
  return out;
}

}  // namespace

CountRecord overlap_via_counts(const PureState& prep, const PureState& meas, std::size_t trials, Seed seed,
                               const DetectorModel& detector) {
  if (trials == 0) throw ValidationError("overlap_via_counts: trials must be >= 1");
  if (!(detector.efficiency > 0.0 && detector.efficiency <= 1.0) || !(detector.dark_rate >= 0.0)) {
    throw ValidationError("overlap_via_counts: invalid detector model");
  }
  Engine rng = make_engine(seed);
  std::vector<double> p = port_probabilities(prep, meas);
  std::vector<std::size_t> counts = multinomial(trials, p, rng);
  if (detector.efficiency < 1.0) {
    for (auto& k : counts) k = std::binomial_distribution<std::size_t>(k, detector.efficiency)(rng);
  }
  if (detector.dark_rate > 0.0) {
    std::poisson_distribution<std::size_t> dark(detector.dark_rate * static_cast<double>(trials));
    for (auto& k : counts) k += dark(rng);
  }
  return make_record(std::move(counts), trials);
}

std::vector<double> perturb(const std::vector<double>& params, const AngleNoise& noise, Engine& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> out(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double a = u(rng);
    const double b = u(rng);
    out[k] = params[k] * (1.0 + noise.eps * a) + noise.delta * b;
  }
  return out;
}

CountRecord overlap_via_counts(const StateFamily& family, const std::vector<double>& prep_params,
                               const std::vector<double>& meas_params, std::size_t trials, Seed seed,
                               const std::optional<AngleNoise>& noise) {
  if (noise && (!(noise->eps >= 0.0) || !(noise->delta >= 0.0))) {
    throw ValidationError("overlap_via_counts: eps and delta must be >= 0");
  }
  std::vector<double> pp = prep_params;
  std::vector<double> mp = meas_params;
  if (noise) {
    Engine rng = make_engine(split(seed, 1));
    pp = perturb(prep_params, *noise, rng);
    mp = perturb(meas_params, *noise, rng);
  }
  return overlap_via_counts(family.make(pp), family.make(mp), trials, split(seed, 0));
}

double inequality_sigma_c(const InequalitySpec& spec, const OverlapSet& r, std::size_t trials) {
  if (trials == 0) throw ValidationError("inequality_sigma_c: trials must be >= 1");
  double var = 0.0;
  for (const auto& [e, w] : spec.weights) var += w * w * r(e.first, e.second) / static_cast<double>(trials);
  return std::sqrt(var);
}

InequalityEstimate inequality_via_counts(const InequalitySpec& spec, const std::vector<PureState>& states,
                                         std::size_t trials, Seed seed) {
  spec.validate();
  if (states.size() != spec.n) throw ValidationError("inequality_via_counts: state count does not match spec.n");
  InequalityEstimate est{OverlapSet(spec.n), {}, 0.0, 0.0};
  const std::size_t edges = spec.n * (spec.n - 1) / 2;
  est.records.resize(edges);
  parallel_for(edges, [&](std::size_t e) {
    std::size_t i = 0;
    std::size_t rem = e;
    while (rem >= spec.n - 1 - i) {
      rem -= spec.n - 1 - i;
      ++i;
    }
    const std::size_t j = i + 1 + rem;
    est.records[e] = overlap_via_counts(states[i], states[j], trials, split(seed, e));
  });
  double var = 0.0;
  for (std::size_t i = 0, e = 0; i < spec.n; ++i) {
    for (std::size_t j = i + 1; j < spec.n; ++j, ++e) {
      est.overlaps.set(i, j, std::min(1.0, est.records[e].estimate()));
      const auto it = spec.weights.find({i, j});
      if (it != spec.weights.end()) var += it->second * it->second * std::pow(est.records[e].sigma(), 2);
    }
  }
  est.value = evaluate(spec, est.overlaps);
  est.sigma_c = std::sqrt(var);
  return est;
}

Dispersion dispersion(const InequalitySpec& spec, const StateFamily& family,
                      const std::vector<std::vector<double>>& state_params, const AngleNoise& noise,
                      std::size_t trials_mc, Seed seed) {
  spec.validate();
  if (state_params.size() != spec.n) throw ValidationError("dispersion: need one parameter vector per state");
  if (!(noise.eps >= 0.0) || !(noise.delta >= 0.0)) throw ValidationError("dispersion: eps and delta must be >= 0");
  if (trials_mc == 0) throw ValidationError("dispersion: trials_mc must be >= 1");
  std::vector<PureState> ideal;
  for (const auto& p : state_params) ideal.push_back(family.make(p));
  Dispersion out;
  out.ideal = evaluate_states(spec, ideal);
  out.samples.assign(trials_mc, 0.0);
  parallel_for(trials_mc, [&](std::size_t t) {
    Engine rng = make_engine(split(seed, t));
    std::vector<PureState> prep;
    std::vector<PureState> meas;
    for (const auto& p : state_params) prep.push_back(family.make(perturb(p, noise, rng)));
    for (const auto& p : state_params) meas.push_back(family.make(perturb(p, noise, rng)));
    double v = 0.0;
    for (const auto& [e, w] : spec.weights) v += w * overlap(meas[e.second], prep[e.first]);
    out.samples[t] = v;
  });
  out.min = *std::min_element(out.samples.begin(), out.samples.end());
  out.max = *std::max_element(out.samples.begin(), out.samples.end());
  return out;
}

}  // namespace cohwit
