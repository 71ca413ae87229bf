#pragma once

#include "butterfly/butterfly.hpp"

namespace bfly {

  // Two discrete fibrations over a common group E:
  //   R = H x| E  ==>  E   with c(h, e) = e, d(h, e) = kappa(h) e, over H1 via sigma_bar
  //   R[sigma]    ==>  E   the kernel pair, over G1 via rho_bar
  struct Fractor {
    Strict2Group H1;
    Strict2Group G1;
    Group        E;
    Strict2Group R;
    Strict2Group Rsigma;
    GroupHom     sigma_bar;  // arrows of R -> arrows of H1
    GroupHom     sigma;
    GroupHom     rho_bar;    // arrows of R[sigma] -> arrows of G1
    GroupHom     rho;
  };

  Fractor to_fractor(Butterfly const& B);

  // Conditions "1" (both legs are internal functors and discrete fibrations),
  // "2" (sigma onto, R[sigma] its kernel pair), "3" (rho d = rho c on R).
  Report validate_fractor(Fractor const& F);

  // kappa(h) = d of the arrow over (h, 1); iota(g) = d of the arrow of
  // R[sigma] over (g, 1). Throws FractorConditionFailed.
  Butterfly from_fractor(Fractor const& F);

}  // namespace bfly
