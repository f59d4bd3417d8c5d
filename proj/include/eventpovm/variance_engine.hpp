#pragma once

#include <array>
#include <string>
#include <vector>

#include "eventpovm/povm_core.hpp"
#include "eventpovm/wavefunction.hpp"

namespace eventpovm {

// One (j, m) slot of an operator image on the grid.
struct FieldComponent {
    int two_j = 0;
    int two_m = 0;
    ComplexVector values;
};
using ComplexField = std::vector<FieldComponent>;

struct MomentumStats {
    std::array<Real, 4> mean_k{};
    std::array<Real, 4> var_k{};
    Real spin_mass_term = 0;
};

struct EngineOptions {
    int threads = 1;
    bool recenter = true;
    Real face_tol = 1e-4;
    Real norm_tol = 1e-6;
    int two_j_cap = -1;  // when >= 0, refuse couplings above this spin
};

struct ReportProvenance {
    std::string gradient_source;
    std::string second_moment_path;
    Real mean_imag_residue = 0;
    Real total_probability = 0;
    Real face_decay_ratio = 0;
    Real cone_clip_fraction = 0;
    bool convergent = true;
    bool recentered = false;
};

struct VarianceReport {
    std::array<Real, 4> mean_x{};
    std::array<Real, 4> second_moment_x{};
    std::array<Real, 4> mean_k{};
    std::array<Real, 4> var_k{};
    Real spin_mass_term = 0;
    std::array<Real, 4> heisenberg_margin{};
    Real angular_bound_margin = 0;
    bool angular_bound_applicable = true;
    ReportProvenance provenance;
};

struct SecondMomentBreakdown {
    Real z_term = 0;
    Real raising_term = 0;
    Real lowering_term = 0;
    Real total() const { return z_term + raising_term + lowering_term; }
};

struct GravityEstimate {
    Real impact_parameter = 0;
    Real peripherality_ratio = 0;
    Real position_bound = 0;
};

struct CommutatorResiduals {
    std::vector<std::pair<std::string, Real>> entries;
    Real z_k_max = 0;
    Real y_k_max = 0;
    Real z0_zr_max = 0;
    Real zr_zs_max = 0;
};

MomentumStats momentum_stats(const WaveFunction& psi, int threads = 1);

// Lower-index images: Y_alpha = S_alpha - i d/dk^alpha, Z_alpha its j-diagonal part.
ComplexField apply_Y(int alpha, const RepLabel& rep, const WaveFunction& phi,
                     int threads = 1);
ComplexField apply_Z(int alpha, const RepLabel& rep, const WaveFunction& phi,
                     int threads = 1);

// <x^alpha> over all channels, upper index. imag_residue (optional out) gets the
// largest imaginary part left by the quadrature, which should be noise.
std::array<Real, 4> mean_coordinates(const PovmSpec& spec, const FilteredWaveFunction& phi,
                                     Real* imag_residue = nullptr, int threads = 1);

// <(x^alpha)^2>. Quasi-baricentric specs use the two-term split, single-spin
// channels the three-term split, anything else the full operator image.
Real second_moment(int alpha, const PovmSpec& spec, const FilteredWaveFunction& phi,
                   int threads = 1, int two_j_cap = -1);

// Diagnostic split for a single channel whose state lives at one spin.
SecondMomentBreakdown second_moment_terms(int alpha, const RepLabel& rep,
                                          const WaveFunction& phi, int threads = 1);

// Full-image evaluation of one channel, any spin content.
Real second_moment_full(int alpha, const RepLabel& rep, const WaveFunction& phi,
                        int threads = 1, int two_j_cap = -1);

VarianceReport variance_report(const PovmSpec& spec, const WaveFunction& psi,
                               const EngineOptions& options = {});

CommutatorResiduals commutator_checks(const RepLabel& rep,
                                      const BoostGeneratorBlocks& blocks,
                                      const FourVector& k, SpinLabel j);

GravityEstimate gravity_estimator(Real j, Real mu, Real big_g);

}  // namespace eventpovm
