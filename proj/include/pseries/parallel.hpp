#ifndef PSERIES_PARALLEL_HPP
#define PSERIES_PARALLEL_HPP

#include <cstdint>
#include <vector>

#include "pseries/channel.hpp"
#include "pseries/hensel.hpp"
#include "pseries/worker_pool.hpp"

namespace pseries {

/// Advance f to precision k using up to t threads for the heavy kernels.
/// Ancestors are updated recursively first. Product updates block-partition
/// the convolution index range and reduce the partial sums in fixed order;
/// Weierstrass coefficients dispatch to the parallel pair update; everything
/// else falls back to the serial update once its ancestors are done. With
/// t = 1 this is the serial update. Results are identical to the serial
/// update for every t.
void update_to_deg_parallel(int k, const PowerSeries& f, int t, WorkerPool& pool);
void update_to_deg_parallel(int k, const UPoPS& f, int t, WorkerPool& pool);

/// (F_(k) - sum_{i=1..k-1} b_(k-i) c0_(i)) / c0_(0), the solve for a new
/// p-coefficient part, with the inner sum block-partitioned over t threads.
/// Requires F at precision k and b, c0 at precision k-1.
HomogeneousPart lemma_for_weierstrass_parallel(int k, const PowerSeries& F, const PowerSeries& b,
                                               const PowerSeries& c0, int t, WorkerPool& pool);

/// Advance every alpha coefficient to precision k, given p's coefficients at
/// k and alpha's at k-1. Tries t equal-work contiguous partitions of the
/// index range first, then t/2 partitions with 2 threads inside each, then a
/// single partition updated with all threads.
void weierstrass_phase2_parallel(int k, WeierstrassState& st, int t, WorkerPool& pool);
void weierstrass_phase2_parallel(int k, const WeierstrassPair& pair, int t, WorkerPool& pool);

/// Threads per factor; entry i belongs to factor i+1. A zero entry folds its
/// factor into the next stage; the last entry is always positive.
struct ThreadPlan {
    std::vector<int> threads;
};

/// Distribute t_tot threads over the factors proportionally to the given
/// per-factor work figures (one reserved up front for the last factor,
/// leftovers donated to the earliest stages).
ThreadPlan distribute_threads(const std::vector<std::uint64_t>& work, int t_tot);

/// Same, with work estimated as deg(f_i) * (remaining degree after f_i).
ThreadPlan distribute_resources_hensel(const HenselFactorization& h, int t_tot);

/// Contiguous run of factors updated by one set of threads.
struct StageSpec {
    int first = 0; // 0-based factor indices, inclusive
    int last = 0;
    int threads = 1;
};

std::vector<StageSpec> plan_stages(const ThreadPlan& plan);

struct StageTiming {
    double busy_seconds = 0;
    double wait_seconds = 0;
};

/// Update every factor to precision k through a pipeline of stages derived
/// from the plan. Each stage consumes precision signals from its upstream
/// neighbour, updates its factors degree by degree with its thread share,
/// and signals downstream every `stride` degrees (and always at a batch
/// end). Blocking; factors are at precision k on return. Returns per-stage
/// busy/wait times.
std::vector<StageTiming> hensel_factorization_pipeline(int k, HenselFactorization& h,
                                                       const ThreadPlan& plan, WorkerPool& pool,
                                                       int stride = 1,
                                                       size_t channel_capacity = 32);

} // namespace pseries

#endif
