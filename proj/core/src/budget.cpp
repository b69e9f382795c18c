#include "bsvhhg/budget.hpp"

#include <cmath>

#include "bsvhhg/error.hpp"

namespace bsv {

PhotonBudget estimate_photon_budget(double photons_ir, double spot_area_ref, double spot_area_target, double ce_ref,
                                    double ratio_coh_over_bsv) {
  for (double v : {photons_ir, spot_area_ref, spot_area_target, ce_ref, ratio_coh_over_bsv}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("photon-budget inputs must be positive");
  }
  PhotonBudget b;
  b.conversion_efficiency = ce_ref * spot_area_target / spot_area_ref;
  b.photons_per_pulse = b.conversion_efficiency * photons_ir / ratio_coh_over_bsv;
  return b;
}

}  // namespace bsv
