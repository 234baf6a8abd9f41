#include "jamsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace jamsim {

void parallel_for_index(int count, int max_parallel, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  int workers =
      max_parallel > 0 ? max_parallel : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto drain = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

Trajectory run_one(const RunSpec& spec, int i) {
  switch (spec.model) {
    case ModelKind::ErChain: {
      Rng rng = make_rng(spec.base_seed, static_cast<std::uint64_t>(i), 0);
      return simulate_er_chain(spec.er, rng);
    }
    case ModelKind::ErGraph: {
      Rng structure = make_rng(spec.base_seed, static_cast<std::uint64_t>(i), 1);
      const AdjacencyGraph graph = sample_er_graph(spec.er, structure);
      Rng rng = make_rng(spec.base_seed, static_cast<std::uint64_t>(i), 0);
      return explore_graph(graph, rng);
    }
    case ModelKind::Rsa: {
      Rng structure = make_rng(spec.base_seed, static_cast<std::uint64_t>(i), 1);
      const PointCloud cloud = sample_point_cloud(spec.box, spec.count_mode, structure);
      Rng selection = make_rng(spec.base_seed, static_cast<std::uint64_t>(i), 0);
      return run_rsa(cloud, spec.box, selection, spec.rsa).trajectory;
    }
    case ModelKind::Coupled: {
      Rng structure = make_rng(spec.base_seed, static_cast<std::uint64_t>(i), 1);
      const PointCloud cloud = sample_point_cloud(spec.box, spec.count_mode, structure);
      RsaStreams streams = make_rsa_streams(spec.base_seed, static_cast<std::uint64_t>(i));
      RsaOptions opt = spec.rsa;
      opt.with_upper = true;
      opt.with_lower = true;
      return run_coupled(cloud, spec.box, streams, opt).z.trajectory;
    }
  }
  throw std::logic_error("run_trajectories: unknown model");
}

}  // namespace

std::vector<Trajectory> run_trajectories(const RunSpec& spec) {
  if (spec.replications < 1)
    throw std::invalid_argument("run_trajectories: need at least one replication");
  std::vector<Trajectory> out(static_cast<std::size_t>(spec.replications));
  parallel_for_index(spec.replications, spec.max_parallel,
                     [&](int i) { out[static_cast<std::size_t>(i)] = run_one(spec, i); });
  return out;
}

std::vector<CoupledRun> run_coupled_replications(const RunSpec& spec) {
  if (spec.model != ModelKind::Rsa && spec.model != ModelKind::Coupled)
    throw std::invalid_argument("run_coupled_replications: model must be Rsa or Coupled");
  if (spec.replications < 1)
    throw std::invalid_argument("run_coupled_replications: need at least one replication");
  RsaOptions opt = spec.rsa;
  if (spec.model == ModelKind::Coupled) {
    opt.with_upper = true;
    opt.with_lower = true;
  }
  std::vector<CoupledRun> out(static_cast<std::size_t>(spec.replications));
  parallel_for_index(spec.replications, spec.max_parallel, [&](int i) {
    Rng structure = make_rng(spec.base_seed, static_cast<std::uint64_t>(i), 1);
    const PointCloud cloud = sample_point_cloud(spec.box, spec.count_mode, structure);
    RsaStreams streams = make_rsa_streams(spec.base_seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = run_coupled(cloud, spec.box, streams, opt);
  });
  return out;
}

JammingEstimate estimate_jamming(const std::vector<Trajectory>& trajectories, double level) {
  if (trajectories.empty()) throw std::invalid_argument("estimate_jamming: need trajectories");
  JammingEstimate out;
  out.samples.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) out.samples.push_back(t.scaled_hitting_time());
  out.stats = summarize(out.samples, level);
  return out;
}

JammingEstimate estimate_jamming(const RunSpec& spec) {
  return estimate_jamming(run_trajectories(spec), spec.level);
}

CltReport clt_study(const std::vector<Trajectory>& trajectories, double t_star, double sigma2) {
  if (trajectories.empty()) throw std::invalid_argument("clt_study: need trajectories");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("clt_study: sigma2 must be positive");
  CltReport report;
  report.t_star = t_star;
  report.sigma2 = sigma2;
  report.standardized.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) {
    const double n = static_cast<double>(t.n_total);
    report.standardized.push_back(std::sqrt(n) * (t.scaled_hitting_time() - t_star));
  }
  const SummaryStats st = summarize(report.standardized, 0.99);
  report.sample_mean = st.mean;
  report.sample_variance = st.variance;
  report.ks = ks_test_normal(report.standardized, 0.0, std::sqrt(sigma2));
  return report;
}

CltReport clt_study(const RunSpec& spec, double t_star, double sigma2) {
  return clt_study(run_trajectories(spec), t_star, sigma2);
}

double sup_deviation(const Trajectory& trajectory, const FluidCurve& curve, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("sup_deviation: horizon must be positive");
  const std::int64_t n = trajectory.n_total;
  const std::int64_t hit = trajectory.hitting_time();
  const auto last = static_cast<std::int64_t>(std::floor(horizon * static_cast<double>(n)));
  double sup = 0.0;
  for (std::int64_t i = 0; i <= last; ++i) {
    const double zi = static_cast<double>(trajectory.z[static_cast<std::size_t>(std::min(i, hit))]) /
                      static_cast<double>(n);
    const double t0 = static_cast<double>(i) / static_cast<double>(n);
    const double t1 = std::min(static_cast<double>(i + 1) / static_cast<double>(n), horizon);
    sup = std::max(sup, std::abs(zi - curve.value_at(t0)));
    sup = std::max(sup, std::abs(zi - curve.value_at(t1)));
  }
  return sup;
}

EnvelopeReport fluid_envelope_check(const std::vector<Trajectory>& trajectories,
                                    const FluidCurve& curve, const ErrorBoundReport& bound,
                                    const std::vector<double>& deltas) {
  if (trajectories.empty()) throw std::invalid_argument("fluid_envelope_check: need trajectories");
  EnvelopeReport report;
  report.omega = bound.omega;
  report.replications = static_cast<int>(trajectories.size());
  double sq_sum = 0.0;
  std::vector<double> hit_dev;
  hit_dev.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) {
    const double sup = sup_deviation(t, curve, bound.horizon);
    sq_sum += sup * sup;
    hit_dev.push_back(std::abs(t.scaled_hitting_time() - curve.t_star));
  }
  report.l2_sup_deviation = std::sqrt(sq_sum / static_cast<double>(trajectories.size()));
  report.l2_ok = report.l2_sup_deviation <= bound.omega;
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw std::invalid_argument("fluid_envelope_check: deltas must be positive");
    EnvelopeDeltaRow row;
    row.delta = delta;
    std::int64_t exceed = 0;
    for (double dev : hit_dev)
      if (dev >= delta) ++exceed;
    row.empirical = static_cast<double>(exceed) / static_cast<double>(hit_dev.size());
    row.bound = bound.deviation_bound(delta);
    row.ok = row.empirical <= row.bound;
    report.deltas.push_back(row);
  }
  return report;
}

EnvelopeReport fluid_envelope_check(const RunSpec& spec, const FluidCurve& curve,
                                    const ErrorBoundReport& bound,
                                    const std::vector<double>& deltas) {
  return fluid_envelope_check(run_trajectories(spec), curve, bound, deltas);
}

std::vector<VariancePoint> diffusion_variance_check(const std::vector<Trajectory>& trajectories,
                                                    double c, const std::vector<double>& times,
                                                    const VarianceCurve& curve) {
  if (trajectories.empty())
    throw std::invalid_argument("diffusion_variance_check: need trajectories");
  std::vector<VariancePoint> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < 0.0 || t >= curve.t_star)
      throw std::invalid_argument("diffusion_variance_check: times must lie in [0, T*)");
    VariancePoint point;
    point.t = t;
    const double z_t = er_fluid_closed_form(c, t);
    std::vector<double> w;
    w.reserve(trajectories.size());
    for (const Trajectory& traj : trajectories) {
      const double n = static_cast<double>(traj.n_total);
      w.push_back(std::sqrt(n) * (traj.scaled_at(t) - z_t));
    }
    const SummaryStats st = summarize(w, 0.99);
    point.empirical_variance = st.variance;
    point.m_value = curve.m_at(t);
    if (point.m_value > 0.0)
      point.relative_gap = std::abs(point.empirical_variance - point.m_value) / point.m_value;
    else
      point.relative_gap = point.empirical_variance == 0.0
                               ? 0.0
                               : std::numeric_limits<double>::infinity();
    out.push_back(point);
  }
  return out;
}

std::vector<VariancePoint> diffusion_variance_check(const RunSpec& spec,
                                                    const std::vector<double>& times,
                                                    const VarianceCurve& curve) {
  return diffusion_variance_check(run_trajectories(spec), spec.er.c, times, curve);
}

}  // namespace jamsim
