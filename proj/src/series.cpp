#include "pseries/series.hpp"

#include "pseries/errors.hpp"

namespace pseries {

namespace detail {

PartStore::~PartStore() {
    for (auto& slot : chunks_)
        delete slot.load(std::memory_order_relaxed);
}

void PartStore::append(HomogeneousPart&& p) {
    int chunk = size_ / kChunkSize;
    if (chunk >= kMaxChunks)
        throw Error("series precision limit exceeded (" +
                    std::to_string(kMaxChunks * kChunkSize) + ")");
    Chunk* c = chunks_[chunk].load(std::memory_order_relaxed);
    if (c == nullptr) {
        c = new Chunk();
        chunks_[chunk].store(c, std::memory_order_relaxed);
    }
    c->slots[size_ % kChunkSize] = std::move(p);
    ++size_;
}

const HomogeneousPart& PartStore::at(int i) const {
    const Chunk* c = chunks_[i / kChunkSize].load(std::memory_order_relaxed);
    return c->slots[i % kChunkSize];
}

SeriesNode::SeriesNode(std::shared_ptr<SeriesContext> c, Rule r) : ctx(std::move(c)), rule(r) {
    ctx->series_created.fetch_add(1, std::memory_order_relaxed);
}

const HomogeneousPart& SeriesNode::part(int k) const {
    if (k > published_precision()) {
        if (!inherently_complete())
            throw Error("homogeneous part " + std::to_string(k) +
                        " read beyond computed precision");
        const_cast<SeriesNode*>(this)->update_to(k);
    }
    return parts.at(k);
}

void SeriesNode::append_part(HomogeneousPart&& p) {
    parts.append(std::move(p));
    precision.store(parts.size() - 1, std::memory_order_release);
}

HomogeneousPart convolve_range(const SeriesNode& g, const SeriesNode& h, int k, int lo, int hi) {
    PartAccumulator acc(g.ctx->n_vars, static_cast<unsigned>(k));
    for (int i = lo; i <= hi; ++i)
        acc.add_product(g.part(i), h.part(k - i));
    return acc.take();
}

std::pair<int, int> product_bounds(const SeriesNode& g, const SeriesNode& h, int k) {
    int og = g.part(0).is_zero() ? 1 : 0;
    int oh = h.part(0).is_zero() ? 1 : 0;
    return {og, k - oh};
}

void SeriesNode::update_to(int k) {
    if (k < 0 || published_precision() >= k)
        return;

    switch (rule) {
    case Rule::Constant:
    case Rule::Explicit: {
        std::lock_guard<std::mutex> lock(materialize_mutex);
        for (int d = published_precision() + 1; d <= k; ++d) {
            if (rule == Rule::Constant) {
                append_part(d == 0 ? HomogeneousPart::constant(ctx->n_vars, const_value)
                                   : HomogeneousPart::zero(d));
            } else {
                append_part(d < static_cast<int>(explicit_parts.size())
                                ? HomogeneousPart(explicit_parts[d])
                                : HomogeneousPart::zero(d));
            }
        }
        return;
    }

    case Rule::Add:
    case Rule::Sub: {
        SeriesNode& g = *ancestors[0];
        SeriesNode& h = *ancestors[1];
        g.update_to(k);
        h.update_to(k);
        for (int d = published_precision() + 1; d <= k; ++d)
            append_part(rule == Rule::Add ? hp_add(g.part(d), h.part(d))
                                          : hp_sub(g.part(d), h.part(d)));
        return;
    }

    case Rule::Mul: {
        SeriesNode& g = *ancestors[0];
        SeriesNode& h = *ancestors[1];
        g.update_to(0);
        h.update_to(0);
        // A zero constant term on one side trims the other side's required
        // precision by one; this is what lets the Weierstrass chains read
        // their own pair's alpha coefficients one degree behind.
        int og = g.part(0).is_zero() ? 1 : 0;
        int oh = h.part(0).is_zero() ? 1 : 0;
        if (k - oh >= 0)
            g.update_to(k - oh);
        if (k - og >= 0)
            h.update_to(k - og);
        for (int d = published_precision() + 1; d <= k; ++d)
            append_part(convolve_range(g, h, d, og, d - oh));
        return;
    }

    case Rule::TaylorShiftCoeff: {
        for (auto& src : ancestors)
            src->update_to(k);
        for (int d = published_precision() + 1; d <= k; ++d) {
            PartAccumulator acc(ctx->n_vars, static_cast<unsigned>(d));
            for (size_t i = 0; i < ancestors.size(); ++i)
                acc.add_scaled(ancestors[i]->part(d), weights[i]);
            append_part(acc.take());
        }
        return;
    }

    case Rule::WeierstrassP:
    case Rule::WeierstrassAlpha: {
        auto pair = coupled.lock();
        if (!pair)
            throw Error("Weierstrass pair backing this coefficient no longer exists");
        pair->ensure(k);
        return;
    }
    }
}

} // namespace detail

std::optional<int> PowerSeries::order(int probe_limit) const {
    for (int d = 0; d < probe_limit; ++d) {
        node_->update_to(d);
        if (!node_->part(d).is_zero())
            return d;
    }
    return std::nullopt;
}

bool PowerSeries::is_zero_to(int k) const {
    node_->update_to(k);
    for (int d = 0; d <= k; ++d)
        if (!node_->part(d).is_zero())
            return false;
    return true;
}

namespace {

using detail::SeriesNode;

std::shared_ptr<SeriesNode> new_node(const std::shared_ptr<SeriesContext>& ctx, Rule r) {
    return std::make_shared<SeriesNode>(ctx, r);
}

void check_same_context(const PowerSeries& g, const PowerSeries& h) {
    if (g.context() != h.context())
        throw ContextMismatchError();
}

PowerSeries binary(Rule r, const PowerSeries& g, const PowerSeries& h) {
    check_same_context(g, h);
    auto n = new_node(g.context(), r);
    n->ancestors = {g.node(), h.node()};
    return PowerSeries(std::move(n));
}

} // namespace

PowerSeries ps_constant(const std::shared_ptr<SeriesContext>& ctx, Rational c) {
    auto n = new_node(ctx, Rule::Constant);
    n->const_value = std::move(c);
    return PowerSeries(std::move(n));
}

PowerSeries ps_variable(const std::shared_ptr<SeriesContext>& ctx, unsigned index_1_based) {
    if (index_1_based < 1 || index_1_based > ctx->n_vars)
        throw BadIndexError("variable index " + std::to_string(index_1_based) +
                            " out of range for " + std::to_string(ctx->n_vars) + " variables");
    Monomial m;
    m.exp.assign(ctx->n_vars, 0);
    m.exp[index_1_based - 1] = 1;
    std::vector<HomogeneousPart> parts;
    parts.push_back(HomogeneousPart::zero(0));
    parts.push_back(HomogeneousPart::monomial_term(std::move(m), Rational(1)));
    return ps_explicit(ctx, std::move(parts));
}

PowerSeries ps_explicit(const std::shared_ptr<SeriesContext>& ctx,
                        std::vector<HomogeneousPart> parts_by_degree) {
    for (size_t i = 0; i < parts_by_degree.size(); ++i)
        if (parts_by_degree[i].degree() != i)
            throw DegreeMismatchError("explicit part at index " + std::to_string(i) +
                                      " has degree " +
                                      std::to_string(parts_by_degree[i].degree()));
    auto n = new_node(ctx, Rule::Explicit);
    n->explicit_parts = std::move(parts_by_degree);
    return PowerSeries(std::move(n));
}

PowerSeries ps_from_polynomial(const std::shared_ptr<SeriesContext>& ctx, const Polynomial& p) {
    std::vector<HomogeneousPart> parts;
    for (int d = 0; d <= p.degree(); ++d)
        parts.push_back(p.part(d));
    return ps_explicit(ctx, std::move(parts));
}

PowerSeries ps_add(const PowerSeries& g, const PowerSeries& h) { return binary(Rule::Add, g, h); }
PowerSeries ps_sub(const PowerSeries& g, const PowerSeries& h) { return binary(Rule::Sub, g, h); }
PowerSeries ps_mul(const PowerSeries& g, const PowerSeries& h) { return binary(Rule::Mul, g, h); }

namespace detail {

PowerSeries make_lincomb(const std::shared_ptr<SeriesContext>& ctx,
                         std::vector<PowerSeries> sources, std::vector<Rational> weights) {
    if (sources.size() != weights.size())
        throw Error("linear combination needs one weight per source");
    auto n = new_node(ctx, Rule::TaylorShiftCoeff);
    for (auto& s : sources) {
        if (s.context() != ctx)
            throw ContextMismatchError();
        n->ancestors.push_back(s.node());
    }
    n->weights = std::move(weights);
    return PowerSeries(std::move(n));
}

PowerSeries make_coupled(const std::shared_ptr<SeriesContext>& ctx, Rule rule, int index) {
    auto n = new_node(ctx, rule);
    n->coupled_index = index;
    return PowerSeries(std::move(n));
}

void attach_coupled(const PowerSeries& s, const std::shared_ptr<CoupledUpdater>& u) {
    s.node()->coupled = u;
}

} // namespace detail

bool ps_equal_to(const PowerSeries& a, const PowerSeries& b, int k) {
    a.update_to(k);
    b.update_to(k);
    for (int d = 0; d <= k; ++d)
        if (!(a.part(d) == b.part(d)))
            return false;
    return true;
}

} // namespace pseries
