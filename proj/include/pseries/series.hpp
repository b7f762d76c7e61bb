#ifndef PSERIES_SERIES_HPP
#define PSERIES_SERIES_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "pseries/homogeneous.hpp"

namespace pseries {

class WorkerPool;

/// Shared environment of a family of power series: the number of variables
/// and a creation counter kept for diagnostics. Series combined by one
/// operation must share a context.
struct SeriesContext {
    explicit SeriesContext(unsigned n) : n_vars(n) {}
    unsigned n_vars;
    std::atomic<std::uint64_t> series_created{0};
};

inline std::shared_ptr<SeriesContext> make_context(unsigned n_vars) {
    return std::make_shared<SeriesContext>(n_vars);
}

/// How a series computes its next homogeneous part.
enum class Rule {
    Constant,         // a field element; every positive-degree part is zero
    Explicit,         // finitely many stored parts, zero beyond
    Add,              // f(k) = g(k) + h(k)
    Sub,              // f(k) = g(k) - h(k)
    Mul,              // f(k) = sum g(i) h(k-i)
    TaylorShiftCoeff, // fixed linear combination of source coefficients
    WeierstrassP,     // coefficient of p, filled by the pair update
    WeierstrassAlpha, // coefficient of alpha, filled by the pair update
};

/// Update hook for series whose parts are produced jointly with siblings
/// (the Weierstrass pair). ensure(k) must leave every coupled coefficient
/// at precision >= k.
struct CoupledUpdater {
    virtual ~CoupledUpdater() = default;
    virtual void ensure(int k) = 0;
    virtual void ensure_parallel(int k, int threads, WorkerPool& pool) = 0;
};

namespace detail {

/// Append-only storage of homogeneous parts with stable addresses, so a
/// reader may hold references while the single writer appends. Readers must
/// only touch indices at or below a precision value they observed with
/// acquire semantics.
class PartStore {
public:
    static constexpr int kChunkSize = 32;
    static constexpr int kMaxChunks = 512; // degrees up to 16383

    PartStore() = default;
    PartStore(const PartStore&) = delete;
    PartStore& operator=(const PartStore&) = delete;
    ~PartStore();

    void append(HomogeneousPart&& p);
    const HomogeneousPart& at(int i) const;
    int size() const { return size_; }

private:
    struct Chunk {
        std::array<HomogeneousPart, kChunkSize> slots;
    };
    std::array<std::atomic<Chunk*>, kMaxChunks> chunks_{};
    int size_ = 0; // writer-side
};

struct SeriesNode {
    SeriesNode(std::shared_ptr<SeriesContext> c, Rule r);

    std::shared_ptr<SeriesContext> ctx;
    Rule rule;

    // operands captured at construction; Add/Sub/Mul use two, a Taylor shift
    // coefficient uses one per source coefficient
    std::vector<std::shared_ptr<SeriesNode>> ancestors;
    std::vector<Rational> weights; // TaylorShiftCoeff only, aligned with ancestors

    Rational const_value;                        // Constant
    std::vector<HomogeneousPart> explicit_parts; // Explicit, indexed by degree

    std::weak_ptr<CoupledUpdater> coupled; // WeierstrassP / WeierstrassAlpha
    int coupled_index = -1;

    PartStore parts;
    std::atomic<int> precision{-1};
    std::mutex materialize_mutex; // Constant/Explicit may be advanced by any thread

    bool inherently_complete() const {
        return rule == Rule::Constant || rule == Rule::Explicit;
    }
    int published_precision() const { return precision.load(std::memory_order_acquire); }

    /// Part of degree k; requires k <= published precision unless the series
    /// is inherently complete (those materialize on demand).
    const HomogeneousPart& part(int k) const;

    /// Serial update: recursively updates ancestors, then extends this series
    /// degree by degree up to k. Idempotent.
    void update_to(int k);

    /// Writer-side: store the next part (degree == precision+1) and publish.
    void append_part(HomogeneousPart&& p);
};

/// sum_{i=lo..hi} g(i) * h(k-i); empty operand parts are skipped.
HomogeneousPart convolve_range(const SeriesNode& g, const SeriesNode& h, int k, int lo, int hi);

/// Inclusive index bounds of the degree-k product update: the range starts at
/// og and ends at k-oh where og/oh record a zero constant term of the leftory
/// right operand. Requires both constant terms materialized.
std::pair<int, int> product_bounds(const SeriesNode& g, const SeriesNode& h, int k);

} // namespace detail

/// Handle to a lazily evaluated multivariate power series. Copies share the
/// underlying node; updating through any copy is visible to all. At most one
/// thread may extend a given series at a time, while readers may access
/// parts up to the precision they last observed.
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::shared_ptr<detail::SeriesNode> n) : node_(std::move(n)) {}

    bool valid() const { return node_ != nullptr; }
    const std::shared_ptr<SeriesContext>& context() const { return node_->ctx; }
    Rule rule() const { return node_->rule; }

    /// Highest degree k such that parts 0..k are computed; -1 when none are.
    int precision() const { return node_->published_precision(); }

    /// True when every part beyond the stored ones is known to be zero.
    bool complete() const { return node_->inherently_complete(); }

    const HomogeneousPart& part(int k) const { return node_->part(k); }

    void update_to(int k) const { node_->update_to(k); }

    /// Smallest degree with a nonzero part, probing (and updating) up to
    /// probe_limit; nullopt means the order is at least probe_limit.
    std::optional<int> order(int probe_limit) const;

    /// True if parts 0..k are all zero (forces an update to k).
    bool is_zero_to(int k) const;

    const std::shared_ptr<detail::SeriesNode>& node() const { return node_; }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.node_ == b.node_;
    }

private:
    std::shared_ptr<detail::SeriesNode> node_;
};

PowerSeries ps_constant(const std::shared_ptr<SeriesContext>& ctx, Rational c);
PowerSeries ps_variable(const std::shared_ptr<SeriesContext>& ctx, unsigned index_1_based);

/// Series with the given parts (index = degree) and zero beyond them.
PowerSeries ps_explicit(const std::shared_ptr<SeriesContext>& ctx,
                        std::vector<HomogeneousPart> parts_by_degree);
PowerSeries ps_from_polynomial(const std::shared_ptr<SeriesContext>& ctx, const Polynomial& p);

/// Lazy arithmetic: construction performs no field operations.
PowerSeries ps_add(const PowerSeries& g, const PowerSeries& h);
PowerSeries ps_sub(const PowerSeries& g, const PowerSeries& h);
PowerSeries ps_mul(const PowerSeries& g, const PowerSeries& h);

namespace detail {

/// b(k) = sum_i weights[i] * sources[i](k): the Taylor shift coefficient rule.
PowerSeries make_lincomb(const std::shared_ptr<SeriesContext>& ctx,
                         std::vector<PowerSeries> sources, std::vector<Rational> weights);

/// Coefficient filled by a coupled pair update; the updater is attached
/// after construction via attach_coupled.
PowerSeries make_coupled(const std::shared_ptr<SeriesContext>& ctx, Rule rule, int index);
void attach_coupled(const PowerSeries& s, const std::shared_ptr<CoupledUpdater>& u);

} // namespace detail

/// Exact equality of parts 0..k (forces updates).
bool ps_equal_to(const PowerSeries& a, const PowerSeries& b, int k);

} // namespace pseries

#endif
