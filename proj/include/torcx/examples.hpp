#pragma once

#include "torcx/operator.hpp"
#include "torcx/symbol.hpp"

#include <string>

namespace torcx {

/// Variable-coefficient system L_j = D_{t_j} + c_j(t) P_j(D_x).
struct VariableSystem {
  std::string name;
  SystemSpec spec;
  CoefficientProfile<GaussRational> profile;
};

/// n = 3, N = 1: p1 = log(1+|xi|) with real c1, p2 = 1 + i xi with Re c2 = 1,
/// p3 = xi with real c3. Every j lies in the class L.
VariableSystem mixed_growth_system();

/// n = 1, N = 1: piecewise symbol with Im(c p) <= 0 for every xi and
/// a = -(2 + cos/2), b = -(1 + sin/2). No j lies in L.
VariableSystem sign_definite_system();

/// n = 1, N = 1: p = i xi, c = 1 + cos/2. Im C_xi grows linearly in xi.
VariableSystem positive_im_system();

/// n = 2, N = 1: L = d_t + a(t) ^ d/dx with a = a0 + d_t G real and closed, G not decoupled.
VariableSystem real_form_system();

/// alpha(xi) + i beta(xi) of the sign-definite system.
GaussRational sign_definite_symbol(std::int64_t xi);

}  // namespace torcx
