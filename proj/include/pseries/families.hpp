#ifndef PSERIES_FAMILIES_HPP
#define PSERIES_FAMILIES_HPP

#include <string>

#include "pseries/upops.hpp"

namespace pseries {

/// Built-in benchmark inputs.
///
///   u_r = sum_{i=2..r} (X1^2+X2+i) Y^i + (X1^2+X2) Y + X1^2+X1*X2+X2^2
///   v_r = sum_{i=ceil(r/2)..r} (X1^2+X2+i) Y^i
///         + sum_{i=1..ceil(r/2)-1} (X1^2+X2) Y^i + X1^2+X1*X2+X2^2
///   x_r = prod_{i=1..r} (Y-i) + X1 (Y^3+Y)
///   y_r = prod_{i=1..r} (Y-i)^i + X1 (Y^3+Y)
///   z_r = prod_{i=1..r} (Y+X1+X2-i) + X1*X2 (Y^3+Y)
///
/// u and v exercise Weierstrass preparation (p of degree 2 and ceil(r/2));
/// x, y, z exercise Hensel factorization with equal-degree, distinct-degree
/// and multivariate factors. x, y, z need r >= 4 so the perturbation leaves
/// the leading term alone.
enum class Family { U, V, X, Y, Z };

Family family_from_name(const std::string& name);
std::string family_name(Family f);

UPoPS gen_family(Family f, int r);

/// Monic input with univariate coefficients for operation-count validation:
/// Y^(d+m) + sum_{j=0..m-1} (j+1+X1) Y^(d+j) + sum_{i=0..d-1} (X1+X1^2) Y^i.
/// Splits at degree d with every coefficient series dense enough that the
/// counted work tracks the closed-form cost.
UPoPS gen_counts_input(int d, int m);

} // namespace pseries

#endif
