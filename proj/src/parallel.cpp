#include "pseries/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <exception>
#include <thread>

#include "pseries/cost_model.hpp"
#include "pseries/errors.hpp"

namespace pseries {

namespace {

using detail::SeriesNode;

// chunk j of t over the inclusive range [lo, hi]
std::pair<int, int> chunk_bounds(int lo, int hi, int t, int j) {
    long count = static_cast<long>(hi) - lo + 1;
    if (count <= 0)
        return {0, -1};
    int from = lo + static_cast<int>(count * j / t);
    int to = lo + static_cast<int>(count * (j + 1) / t) - 1;
    return {from, to};
}

// partial sums per chunk, reduced in chunk order
HomogeneousPart convolve_parallel(const SeriesNode& g, const SeriesNode& h, int k, int lo, int hi,
                                  int t, WorkerPool& pool) {
    if (hi - lo + 1 <= 1 || t <= 1)
        return detail::convolve_range(g, h, k, lo, hi);
    std::vector<HomogeneousPart> partial(static_cast<size_t>(t));
    pool.parallel_for(t, [&](int j) {
        auto [from, to] = chunk_bounds(lo, hi, t, j);
        partial[static_cast<size_t>(j)] = detail::convolve_range(g, h, k, from, to);
    });
    HomogeneousPart acc = HomogeneousPart::zero(static_cast<unsigned>(k));
    for (auto& p : partial) {
        if (p.is_zero())
            continue;
        acc = acc.is_zero() ? std::move(p) : hp_add(acc, p);
    }
    return acc;
}

void weierstrass_phase2_parallel_step(WeierstrassState& st, int k, int t, WorkerPool& pool);

} // namespace

void update_to_deg_parallel(int k, const PowerSeries& f, int t, WorkerPool& pool) {
    SeriesNode& node = *f.node();
    if (k < 0 || node.published_precision() >= k)
        return;
    if (t <= 1) {
        node.update_to(k);
        return;
    }

    switch (node.rule) {
    case Rule::Constant:
    case Rule::Explicit:
        node.update_to(k);
        return;

    case Rule::Add:
    case Rule::Sub:
        update_to_deg_parallel(k, PowerSeries(node.ancestors[0]), t, pool);
        update_to_deg_parallel(k, PowerSeries(node.ancestors[1]), t, pool);
        node.update_to(k); // ancestors done; the combine itself is linear
        return;

    case Rule::Mul: {
        SeriesNode& g = *node.ancestors[0];
        SeriesNode& h = *node.ancestors[1];
        g.update_to(0);
        h.update_to(0);
        int og = g.part(0).is_zero() ? 1 : 0;
        int oh = h.part(0).is_zero() ? 1 : 0;
        update_to_deg_parallel(k - oh, PowerSeries(node.ancestors[0]), t, pool);
        update_to_deg_parallel(k - og, PowerSeries(node.ancestors[1]), t, pool);
        for (int d = node.published_precision() + 1; d <= k; ++d)
            node.append_part(convolve_parallel(g, h, d, og, d - oh, t, pool));
        return;
    }

    case Rule::TaylorShiftCoeff:
        for (auto& src : node.ancestors)
            update_to_deg_parallel(k, PowerSeries(src), t, pool);
        node.update_to(k);
        return;

    case Rule::WeierstrassP:
    case Rule::WeierstrassAlpha: {
        auto pair = node.coupled.lock();
        if (!pair)
            throw Error("Weierstrass pair backing this coefficient no longer exists");
        pair->ensure_parallel(k, t, pool);
        return;
    }
    }
}

void update_to_deg_parallel(int k, const UPoPS& f, int t, WorkerPool& pool) {
    for (const auto& c : f.coeffs())
        update_to_deg_parallel(k, c, t, pool);
}

HomogeneousPart lemma_for_weierstrass_parallel(int k, const PowerSeries& F, const PowerSeries& b,
                                               const PowerSeries& c0, int t, WorkerPool& pool) {
    const HomogeneousPart& c00 = c0.part(0);
    if (c00.is_zero())
        throw Error("internal: alpha constant term vanished");
    const Rational& h0 = c00.terms().front().second;

    const SeriesNode& bn = *b.node();
    const SeriesNode& cn = *c0.node();
    HomogeneousPart s = HomogeneousPart::zero(static_cast<unsigned>(k));
    if (k >= 2) {
        // sum_{i=1..k-1} b_(k-i) c0_(i), block-partitioned
        int lo = 1, hi = k - 1;
        int chunks = std::min(t, hi - lo + 1);
        if (chunks <= 1) {
            PartAccumulator acc(b.context()->n_vars, static_cast<unsigned>(k));
            for (int i = lo; i <= hi; ++i)
                acc.add_product(bn.part(k - i), cn.part(i));
            s = acc.take();
        } else {
            std::vector<HomogeneousPart> partial(static_cast<size_t>(chunks));
            pool.parallel_for(chunks, [&](int j) {
                auto [from, to] = chunk_bounds(lo, hi, chunks, j);
                PartAccumulator acc(b.context()->n_vars, static_cast<unsigned>(k));
                for (int i = from; i <= to; ++i)
                    acc.add_product(bn.part(k - i), cn.part(i));
                partial[static_cast<size_t>(j)] = acc.take();
            });
            for (auto& p : partial) {
                if (p.is_zero())
                    continue;
                s = s.is_zero() ? std::move(p) : hp_add(s, p);
            }
        }
    }
    const HomogeneousPart& fk = F.part(k);
    HomogeneousPart num = s.is_zero() ? fk : hp_sub(fk, s);
    return hp_div_scalar(num, h0);
}

namespace {

// contiguous partitions of indices 1..m with per-partition work >= total/t;
// empty result means the work did not split into exactly t partitions
std::vector<int> greedy_partition(const std::vector<std::uint64_t>& w, int m, int t,
                                  std::uint64_t total) {
    std::vector<int> ends;
    std::uint64_t acc = 0;
    for (int i = 1; i <= m; ++i) {
        acc += w[static_cast<size_t>(i)];
        if (acc * static_cast<std::uint64_t>(t) >= total) {
            ends.push_back(i);
            acc = 0;
            if (static_cast<int>(ends.size()) == t)
                break;
        }
    }
    if (static_cast<int>(ends.size()) != t)
        return {};
    ends.back() = m; // absorb any zero-work tail
    return ends;
}

void weierstrass_phase2_parallel_step(WeierstrassState& st, int k, int t, WorkerPool& pool) {
    const int m = st.m;
    // Freeze the source coefficients first: the partitions below may share
    // ancestors through them, and each must see read-only operands.
    for (int j = 0; j <= m; ++j)
        update_to_deg_parallel(k, st.a[static_cast<size_t>(st.d + j)], t, pool);
    // last equation first: (c_m)_(k) = (a_{d+m})_(k)
    st.c_rhs[static_cast<size_t>(m)].update_to(k);
    st.c[static_cast<size_t>(m)].node()->append_part(
        HomogeneousPart(st.c_rhs[static_cast<size_t>(m)].part(k)));
    if (m == 0)
        return;

    std::vector<std::uint64_t> w(static_cast<size_t>(m) + 1, 0);
    std::uint64_t total = 0;
    for (int i = 1; i <= m; ++i) {
        w[static_cast<size_t>(i)] = phase2_term_work(i, st.d, st.monic_hint).units;
        total += w[static_cast<size_t>(i)];
    }

    auto update_one = [&](int i, int inner_threads) {
        PowerSeries& rhs = st.c_rhs[static_cast<size_t>(m - i)];
        update_to_deg_parallel(k, rhs, inner_threads, pool);
        st.c[static_cast<size_t>(m - i)].node()->append_part(HomogeneousPart(rhs.part(k)));
    };

    int t_outer = t;
    int t_inner = 1;
    std::vector<int> ends;
    if (total == 0 || t <= 1) {
        t_outer = 1;
        ends = {m};
    } else {
        ends = greedy_partition(w, m, t_outer, total);
        if (ends.empty()) { // uneven; halve the partitions, parallelize inside
            t_outer = std::max(1, t / 2);
            t_inner = 2;
            ends = greedy_partition(w, m, t_outer, total);
        }
        if (ends.empty()) { // still uneven; one partition, all threads inside
            t_inner = 2 * t_outer;
            t_outer = 1;
            ends = {m};
        }
    }

    if (t_outer == 1) {
        for (int i = 1; i <= m; ++i)
            update_one(i, t_inner);
        return;
    }
    pool.parallel_for(t_outer, [&](int part) {
        int from = part == 0 ? 1 : ends[static_cast<size_t>(part) - 1] + 1;
        int to = ends[static_cast<size_t>(part)];
        for (int i = from; i <= to; ++i)
            update_one(i, t_inner);
    });
}

} // namespace

void weierstrass_phase2_parallel(int k, WeierstrassState& st, int t, WorkerPool& pool) {
    weierstrass_phase2_parallel_step(st, k, t, pool);
}

void weierstrass_phase2_parallel(int k, const WeierstrassPair& pair, int t, WorkerPool& pool) {
    weierstrass_phase2_parallel_step(*pair.state(), k, t, pool);
}

void weierstrass_ensure_parallel(WeierstrassState& st, int k, int threads, WorkerPool& pool) {
    if (k < 0 || k <= st.pair_precision)
        return;
    if (threads <= 1) {
        st.ensure(k);
        return;
    }
    if (st.pair_precision < 0)
        st.init_degree0();
    for (int kk = st.pair_precision + 1; kk <= k; ++kk) {
        for (auto& src : st.a)
            update_to_deg_parallel(kk, src, threads, pool);
        for (int i = 0; i < st.d; ++i) {
            PowerSeries& Fi = st.F[static_cast<size_t>(i)];
            update_to_deg_parallel(kk, Fi, threads, pool);
            st.b[static_cast<size_t>(i)].node()->append_part(lemma_for_weierstrass_parallel(
                kk, Fi, st.b[static_cast<size_t>(i)], st.c[0], threads, pool));
        }
        weierstrass_phase2_parallel_step(st, kk, threads, pool);
        st.pair_precision = kk;
    }
}

// ------------------------------------------------------------- scheduling

ThreadPlan distribute_threads(const std::vector<std::uint64_t>& work, int t_tot) {
    const int r = static_cast<int>(work.size());
    if (r < 1)
        throw Error("thread distribution needs at least one factor");
    if (t_tot < 2)
        throw Error("thread distribution needs t_tot > 1");

    ThreadPlan plan;
    plan.threads.assign(static_cast<size_t>(r), 0);
    plan.threads[static_cast<size_t>(r) - 1] = 1; // the last factor always runs
    const std::uint64_t t = static_cast<std::uint64_t>(t_tot) - 1;
    std::uint64_t total = 0;
    for (auto u : work)
        total += u;

    if (total > 0) {
        std::uint64_t acc = 0;
        for (int i = 0; i < r; ++i) {
            acc += work[static_cast<size_t>(i)];
            // accumulate the work ratio until it strictly exceeds 1/t of the
            // whole, then grant round(ratio * t) threads to this stage
            if (acc * t > total) {
                std::uint64_t granted = (2 * acc * t + total) / (2 * total);
                int g = static_cast<int>(granted);
                plan.threads[static_cast<size_t>(i)] = i == r - 1 ? std::max(1, g) : g;
                acc = 0;
            }
        }
    }

    int sum = 0;
    for (int v : plan.threads)
        sum += v;
    while (sum > t_tot) {
        // trim from the latest stage that can spare a thread
        int idx = -1;
        for (int i = r - 1; i >= 0; --i)
            if (plan.threads[static_cast<size_t>(i)] > 1) {
                idx = i;
                break;
            }
        if (idx < 0)
            break;
        --plan.threads[static_cast<size_t>(idx)];
        --sum;
    }
    // hand the excess to the earliest stages, round-robin until spent
    int spare = t_tot - sum;
    while (spare > 0)
        for (int i = 0; i < r && spare > 0; ++i) {
            ++plan.threads[static_cast<size_t>(i)];
            --spare;
        }
    return plan;
}

ThreadPlan distribute_resources_hensel(const HenselFactorization& h, int t_tot) {
    std::vector<int> degs = h.factor_degrees();
    const int r = static_cast<int>(degs.size());
    std::vector<std::uint64_t> work(static_cast<size_t>(r), 0);
    int d = 0;
    for (int v : degs)
        d += v;
    for (int i = 0; i + 1 < r; ++i) {
        work[static_cast<size_t>(i)] = static_cast<std::uint64_t>(
            hensel_stage_work(degs[static_cast<size_t>(i)], d - degs[static_cast<size_t>(i)])
                .units);
        d -= degs[static_cast<size_t>(i)];
    }
    return distribute_threads(work, t_tot);
}

std::vector<StageSpec> plan_stages(const ThreadPlan& plan) {
    const int r = static_cast<int>(plan.threads.size());
    if (r == 0 || plan.threads.back() < 1)
        throw PipelineError("thread plan must give the last factor at least one thread");
    std::vector<StageSpec> stages;
    int first = 0;
    for (int i = 0; i < r; ++i) {
        if (plan.threads[static_cast<size_t>(i)] > 0) {
            stages.push_back({first, i, plan.threads[static_cast<size_t>(i)]});
            first = i + 1;
        }
    }
    return stages;
}

// --------------------------------------------------------------- pipeline

namespace {

struct PipelineShared {
    std::mutex error_mutex;
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    void record(std::exception_ptr e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error)
            error = e;
        failed.store(true, std::memory_order_release);
    }
};

} // namespace

std::vector<StageTiming> hensel_factorization_pipeline(int k, HenselFactorization& h,
                                                       const ThreadPlan& plan, WorkerPool& pool,
                                                       int stride, size_t channel_capacity) {
    if (static_cast<int>(plan.threads.size()) != h.factor_count())
        throw PipelineError("thread plan length must equal the factor count");
    if (stride < 1)
        stride = 1;
    const std::vector<StageSpec> stages = plan_stages(plan);
    const size_t n_stages = stages.size();

    std::vector<std::shared_ptr<PrecisionChannel>> chans;
    chans.reserve(n_stages + 1);
    for (size_t i = 0; i <= n_stages; ++i)
        chans.push_back(std::make_shared<PrecisionChannel>(channel_capacity));

    PipelineShared shared;
    std::vector<StageTiming> timings(n_stages);

    auto stage_body = [&](size_t s) {
        PrecisionChannel& in = *chans[s];
        PrecisionChannel& out = *chans[s + 1];
        const StageSpec& spec = stages[s];
        StageTiming& timing = timings[s];
        using clock = std::chrono::steady_clock;
        try {
            int p = INT_MAX;
            for (int f = spec.first; f <= spec.last; ++f)
                p = std::min(p, h.factor(f).precision());
            p = std::min(p, k); // factors of complete coefficients report huge precision
            int last_emitted = -1;
            auto emit = [&](int j) {
                if (j > last_emitted) {
                    out.send(j);
                    last_emitted = j;
                }
            };
            for (;;) {
                auto t0 = clock::now();
                std::optional<int> got = in.recv();
                timing.wait_seconds += std::chrono::duration<double>(clock::now() - t0).count();
                if (!got) {
                    if (!shared.failed.load(std::memory_order_acquire))
                        throw PipelineError("upstream stage closed before the target precision");
                    break;
                }
                int target = *got;
                auto t1 = clock::now();
                for (int j = p + 1; j <= target; ++j) {
                    for (int f = spec.first; f <= spec.last; ++f)
                        update_to_deg_parallel(j, h.factor(f), spec.threads, pool);
                    if (j % stride == 0 || j == target)
                        emit(j);
                }
                timing.busy_seconds += std::chrono::duration<double>(clock::now() - t1).count();
                p = std::max(p, target);
                emit(target);
                if (target >= k)
                    break;
            }
            out.close();
        } catch (...) {
            shared.record(std::current_exception());
            out.close();
            while (in.recv()) {
                // drain so a blocked upstream sender can finish
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(n_stages);
    for (size_t s = 0; s < n_stages; ++s)
        threads.emplace_back(stage_body, s);

    // root generator: announce the full target immediately
    try {
        chans.front()->send(k);
    } catch (...) {
        shared.record(std::current_exception());
    }
    chans.front()->close();

    // ensure the last stage completes before returning
    while (auto v = chans.back()->recv()) {
        if (*v >= k)
            break;
    }
    while (chans.back()->recv()) {
    }
    for (auto& t : threads)
        t.join();

    if (shared.failed.load(std::memory_order_acquire))
        std::rethrow_exception(shared.error);
    return timings;
}

} // namespace pseries
