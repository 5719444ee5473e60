#include "metacasimir/mode_table.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace metacasimir {

int ModeEntry::multiplicity() const {
  if (rep.n == 0 && rep.m == 0) return 1;
  if (rep.n == 0 || rep.m == 0) return 2;
  return 4;
}

int ModeTable::modes_used() const {
  int count = 0;
  for (const auto& e : entries) count += e.multiplicity();
  return count;
}

const ModeEntry* ModeTable::find(ModeIndex rep) const {
  for (const auto& e : entries)
    if (e.rep == rep) return &e;
  return nullptr;
}

int available_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<ModeIndex> shell_representatives(const ChessboardSpec& spec, int shell) {
  std::vector<ModeIndex> reps;
  auto keep = [&](ModeIndex idx) {
    if (geometric_coefficient(idx, spec.f_x, spec.f_y) != 0.0) reps.push_back(idx);
  };
  if (shell == 0) {
    reps.push_back({0, 0});
    return reps;
  }
  for (int m = 0; m <= shell; ++m) keep({shell, m});
  for (int n = shell - 1; n >= 0; --n) keep({n, shell});
  return reps;
}

namespace {

// Two-consecutive-shell stopping rule on displacement-independent weights:
// shell measure sum_orbit mult (1 + N) |I| against the accumulated
// heterogeneous measure, for the energy and the force integrals.
class ShellStopper {
 public:
  explicit ShellStopper(double rel_tol) : rel_tol_(rel_tol) {}

  // Returns true when the sum may stop after this shell.
  bool add(int shell, const std::vector<ModeEntry>& entries, std::size_t begin,
           std::size_t end) {
    double e = 0.0;
    double f = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double w = entries[i].multiplicity() * (1.0 + shell);
      e += w * std::abs(entries[i].integrals.energy.value);
      f += w * std::abs(entries[i].integrals.force.value);
    }
    acc_e_ += e;
    acc_f_ += f;
    const bool small = e <= rel_tol_ * acc_e_ && f <= rel_tol_ * acc_f_;
    last_ratio_ = std::max(acc_e_ > 0.0 ? e / acc_e_ : 0.0, acc_f_ > 0.0 ? f / acc_f_ : 0.0);
    quiet_ = small ? quiet_ + 1 : 0;
    return quiet_ >= 2;
  }

  double last_ratio() const { return last_ratio_; }

 private:
  double rel_tol_;
  double acc_e_ = 0.0;
  double acc_f_ = 0.0;
  double last_ratio_ = 0.0;
  int quiet_ = 0;
};

struct Job {
  ModeIndex rep;
  int shell;
};

template <class Evaluate>
ModeTable build(const ChessboardSpec& spec, double H, const QuadratureSpec& quad,
                std::size_t batch_target, Evaluate&& evaluate) {
  spec.validate();
  quad.validate();
  if (!(H > 0.0)) throw std::domain_error("mode table: separation H must be positive");

  ModeTable table;
  table.spec = spec;
  table.H = H;

  const int last_shell = quad.fixed_shells > 0 ? quad.fixed_shells : quad.max_shells;
  ShellStopper stopper(quad.rel_tol);
  bool stopped = false;

  int next_shell = 0;
  while (!stopped && next_shell <= last_shell) {
    // Gather whole shells into one batch; shells past the stopping point are
    // evaluated but discarded, so the batch size never changes the result.
    std::vector<Job> jobs;
    int batch_end = next_shell;
    while (batch_end <= last_shell && (jobs.size() < batch_target || batch_end == next_shell)) {
      for (ModeIndex r : shell_representatives(spec, batch_end)) jobs.push_back({r, batch_end});
      ++batch_end;
    }
    std::vector<ModeEntry> results(jobs.size());
    evaluate(jobs, results);

    std::size_t i = 0;
    for (int shell = next_shell; shell < batch_end && !stopped; ++shell) {
      const std::size_t begin = table.entries.size();
      for (; i < jobs.size() && jobs[i].shell == shell; ++i) {
        table.entries.push_back(results[i]);
        const auto& mi = results[i].integrals;
        table.quadrature_converged =
            table.quadrature_converged && mi.energy.converged && mi.force.converged;
        table.evaluations += mi.energy.evaluations;
      }
      table.shells = shell;
      if (shell == 0) continue;
      const bool can_stop = stopper.add(shell, table.entries, begin, table.entries.size());
      table.truncation_estimate = stopper.last_ratio();
      if (quad.fixed_shells == 0 && can_stop) stopped = true;
    }
    next_shell = batch_end;
  }
  table.truncation_converged = quad.fixed_shells > 0 || stopped;
  return table;
}

}  // namespace

ModeTable build_mode_table_serial(const ChessboardSpec& spec, double H,
                                  const DispersionParams& params,
                                  const QuadratureSpec& quad) {
  return build(spec, H, quad, 1, [&](const std::vector<Job>& jobs, std::vector<ModeEntry>& out) {
    for (std::size_t j = 0; j < jobs.size(); ++j)
      out[j] = ModeEntry{jobs[j].rep, jobs[j].shell,
                         mode_integrals(spec, jobs[j].rep, H, params, quad)};
  });
}

ModeTable build_mode_table_parallel(const ChessboardSpec& spec, double H,
                                    const DispersionParams& params,
                                    const QuadratureSpec& quad, int workers) {
  const int threads = workers > 0 ? workers : available_workers();
  const std::size_t target = static_cast<std::size_t>(2 * threads);
  return build(spec, H, quad, target,
               [&](const std::vector<Job>& jobs, std::vector<ModeEntry>& out) {
                 std::exception_ptr failure;
                 const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
                 for (long j = 0; j < count; ++j) {
                   try {
                     out[j] = ModeEntry{jobs[j].rep, jobs[j].shell,
                                        mode_integrals(spec, jobs[j].rep, H, params, quad)};
                   } catch (...) {
#pragma omp critical(metacasimir_mode_failure)
                     if (!failure) failure = std::current_exception();
                   }
                 }
                 if (failure) std::rethrow_exception(failure);
               });
}

ModeTable build_mode_table(const ChessboardSpec& spec, double H,
                           const DispersionParams& params, const QuadratureSpec& quad,
                           int workers) {
  if (workers == 1) return build_mode_table_serial(spec, H, params, quad);
  return build_mode_table_parallel(spec, H, params, quad, workers);
}

}  // namespace metacasimir
