#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "heatcontent/errors.hpp"
#include "heatcontent/random.hpp"

namespace heat {

/// Worker count from HEATCONTENT_THREADS, else hardware concurrency (>= 1).
int default_thread_count();

/// Resolves a requested thread count; values <= 0 select the default.
int resolve_threads(int requested);

/// Runs job(i) for i in [0, count) on up to `threads` workers and returns the
/// results indexed by i. Reductions over the returned vector are therefore
/// independent of the thread count and scheduling.
template <class Result, class Job>
std::vector<Result> run_indexed(std::size_t count, int threads, Job&& job) {
    std::vector<Result> results(count);
    const int workers = static_cast<int>(
        std::min<std::size_t>(count, static_cast<std::size_t>(resolve_threads(threads))));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = job(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = job(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    pool.clear();
    if (error) std::rethrow_exception(error);
    return results;
}

/// Monte-Carlo budget shared by the estimators.
struct McBudget {
    std::uint64_t samples = 1u << 20;
    std::uint64_t batch_size = 1u << 14;
    std::uint64_t seed = 20240917;
    int threads = 0;
    /// Largest acceptable standard error; 0 disables the check.
    double target_error = 0.0;

    std::uint64_t batch_count() const noexcept {
        return batch_size == 0 ? 0 : (samples + batch_size - 1) / batch_size;
    }
    std::uint64_t batch_samples(std::uint64_t batch) const noexcept {
        const std::uint64_t begin = batch * batch_size;
        return begin >= samples ? 0 : std::min(batch_size, samples - begin);
    }
};

/// Running sums of one batch of Monte-Carlo samples.
struct BatchSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;

    void add(double v) noexcept {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    void merge(const BatchSums& o) noexcept {
        sum += o.sum;
        sum_sq += o.sum_sq;
        n += o.n;
    }
};

struct McMean {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t n = 0;
};

inline McMean finish(const BatchSums& s) {
    McMean m;
    m.n = s.n;
    if (s.n == 0) return m;
    const double n = static_cast<double>(s.n);
    m.mean = s.sum / n;
    const double var = s.n > 1 ? std::max(0.0, (s.sum_sq - n * m.mean * m.mean) / (n - 1.0)) : 0.0;
    m.std_err = std::sqrt(var / n);
    return m;
}

/// Runs job(stream, n) -> BatchSums for every batch of the budget with the
/// per-batch stream derived from (seed, batch), then reduces in batch order.
template <class Job>
McMean run_batched(const McBudget& budget, Job&& job) {
    const auto batches = budget.batch_count();
    auto parts = run_indexed<BatchSums>(batches, budget.threads, [&](std::size_t b) {
        RandomStream rng = RandomStream::for_batch(budget.seed, b);
        return job(rng, budget.batch_samples(b));
    });
    BatchSums total;
    for (const auto& p : parts) total.merge(p);
    return finish(total);
}

/// run_batched with the budget's target_error enforced on scale * mean: a
/// one-batch pilot predicts the required sample count and refuses budgets
/// that cannot reach it.
template <class Job>
McMean run_budgeted(const McBudget& budget, double scale, Job&& job) {
    if (budget.target_error > 0.0) {
        McBudget pilot = budget;
        pilot.samples = std::min(budget.samples, budget.batch_size);
        const McMean m = run_batched(pilot, job);
        const double sd = m.std_err * std::sqrt(static_cast<double>(m.n)) * std::abs(scale);
        const double need = sd * sd / (budget.target_error * budget.target_error);
        if (need > static_cast<double>(budget.samples))
            fail(ErrorKind::BudgetTooSmall, "target error needs about " + std::to_string(static_cast<long long>(need)) +
                                                " samples, budget allows " + std::to_string(budget.samples));
    }
    McMean m = run_batched(budget, job);
    if (budget.target_error > 0.0 && m.std_err * std::abs(scale) > budget.target_error)
        fail(ErrorKind::BudgetTooSmall, "standard error above target after the full budget");
    return m;
}

}  // namespace heat
