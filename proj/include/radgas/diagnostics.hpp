#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "radgas/grid.hpp"

namespace radgas {

struct DiagnosticsRecord {
    double t = 0;
    double sup_v = 0, sup_vx = 0, sup_vy = 0;
    double h0 = 0, h1 = 0, h2 = 0, h3 = 0;      // ||v||_{H^k}
    double w_a0 = 0, w_a1 = 0, w_a2 = 0;        // |v|_{alpha,k}
    double e_norm = 0, d_norm = 0;              // E(t), D(t)
    double dissip_v = 0, dissip_gv = 0;         // ||sqrt(ubar_x) v||^2, ||sqrt(ubar_x) grad v||^2
    double sup_p1 = 0, sup_p2 = 0;
    double sup_divp_x = 0, sup_divp_y = 0;
    double bres = 0, cres = 0;                  // boundary / curl identity residuals
    double m0_sq = 0, malpha_sq = 0;            // frozen from t=0
};

double norm_hk(const ScalarField& f, int k);
double weighted_norm(const ScalarField& f, double alpha, int k);

// E(t)^2 = sum_{k<=2} (1+t)^k ||dy^k v||^2_{H^{3-k}},
// D(t)^2 = sum_{k<=2} (1+t)^k ||dy^k grad v||^2_{H^{2-k}}.
std::pair<double, double> energy_ED(const ScalarField& v, double t);

double boundary_identity_residual(const ScalarField& v, const ScalarField& divp, double u_minus);

DiagnosticsRecord compute_record(double t, const ScalarField& v, const VectorField& p,
                                 const ScalarField& divp, const std::vector<double>& ubar_x,
                                 double u_minus, double alpha, double m0_sq, double malpha_sq);

// ---- interpolation-inequality property suite ----

enum class InterpKind { L_inf_1d, Lx2Lyinf, LxinfLy2, v_Linfty, GN };

struct IneqCheck {
    double lhs = 0, rhs = 0;
    bool holds = false;
};

// Constants without an explicit value in the estimates are calibrated once on a
// fixed internal seeded family; checks then allow 5% slack on the calibrated C.
struct CalibratedConstants {
    double lx2lyinf = 0, lxinfly2 = 0, v_linfty = 0, gn = 0;
};
const CalibratedConstants& interp_calibration();

// 2D kinds; L_inf_1d applied row-wise (worst row). record=true feeds the sample into
// a calibration accumulator instead of asserting against the frozen constant.
IneqCheck check_interp_inequality(InterpKind which, const ScalarField& f, bool record = false);
IneqCheck check_interp_inequality_1d(const std::vector<double>& f, double dx);

std::pair<double, double> norm_equivalence_check(const ScalarField& v);

struct DecayFit {
    double exponent = 0, r2 = 0;
};
DecayFit fit_decay_exponent(const std::vector<std::pair<double, double>>& series,
                            double window_fraction);

// Seeded band-limited test fields (decayed at the far edge; wall_zero pins f(0,y)=0).
ScalarField random_test_field(std::uint64_t seed, const Grid& g, bool wall_zero);
std::vector<double> random_test_field_1d(std::uint64_t seed, int n, double lx);
Grid property_grid(); // the fixed grid the sweeps and calibration run on

} // namespace radgas
