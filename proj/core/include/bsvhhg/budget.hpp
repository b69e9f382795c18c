#pragma once

namespace bsv {

struct PhotonBudget {
  double conversion_efficiency = 0.0;  // at the target spot area
  double photons_per_pulse = 0.0;
};

/// CE_t = CE_ref S_t / S_ref; N_q = CE_t N_IR / ratio_coh_over_bsv.
PhotonBudget estimate_photon_budget(double photons_ir, double spot_area_ref, double spot_area_target, double ce_ref,
                                    double ratio_coh_over_bsv);

}  // namespace bsv
