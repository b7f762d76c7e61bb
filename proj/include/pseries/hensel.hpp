#ifndef PSERIES_HENSEL_HPP
#define PSERIES_HENSEL_HPP

#include <optional>
#include <vector>

#include "pseries/weierstrass.hpp"

namespace pseries {

struct Root {
    Rational value;
    int multiplicity;
};

/// Roots ordered by increasing multiplicity, ties broken by ascending value.
using RootList = std::vector<Root>;

/// Complete rational root list of a monic polynomial over the rationals
/// (q[i] is the coefficient of Y^i, q.back() == 1, degree >= 1).
/// Candidates come from the rational-root theorem on the primitive integer
/// form, with numerators and denominators searched up to 10^6; repeated
/// deflation extracts multiplicities. Throws NonSplittingError when the
/// polynomial does not split into rational linear factors (within the
/// search bound).
RootList find_rational_roots(const std::vector<Rational>& q);

/// One link of the factorization chain. For every stage but the last:
/// shifted = fhat(Y + root), (p, alpha) = prepare(shifted),
/// factor = p(Y - root), and the next stage's fhat = alpha(Y - root).
/// The last stage's factor is its fhat itself.
struct HenselStage {
    Rational root;
    int degree = 0;   // degree of this stage's factor
    int residual = 0; // combined degree of this and all later factors
    UPoPS fhat;
    UPoPS shifted;                      // stages with a pair only
    std::optional<WeierstrassPair> pair;
    UPoPS factor;
};

class HenselFactorization {
public:
    HenselFactorization(UPoPS source, RootList roots, std::vector<HenselStage> stages)
        : source_(std::move(source)), roots_(std::move(roots)), stages_(std::move(stages)) {}

    int factor_count() const { return static_cast<int>(stages_.size()); }
    const UPoPS& factor(int i) const { return stages_[static_cast<size_t>(i)].factor; }
    const RootList& roots() const { return roots_; }
    const UPoPS& source() const { return source_; }
    const std::vector<HenselStage>& stages() const { return stages_; }

    std::vector<int> factor_degrees() const;

    /// Advance every factor to precision k, walking the chain in order.
    void update_to(int k);

    /// Minimum precision over the factors.
    int precision() const;

private:
    UPoPS source_;
    RootList roots_;
    std::vector<HenselStage> stages_;
};

/// Build the lazy factorization chain of a monic UPoPS whose evaluation at
/// the origin splits over the rationals. No parts beyond constant terms are
/// computed. Throws NotMonicError / NonSplittingError.
HenselFactorization hensel_factorize(const UPoPS& f);

} // namespace pseries

#endif
