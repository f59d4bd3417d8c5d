#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "eventpovm/spin_algebra.hpp"
#include "eventpovm/wavefunction.hpp"

namespace eventpovm {

struct MassWindow {
    Real mu_min = 0;
    Real mu_max = std::numeric_limits<Real>::infinity();

    bool contains(Real mu) const { return mu >= mu_min && mu <= mu_max; }
};

// F^j_{nu sigma}(mu) for one channel.
using AmplitudeFn = std::function<Complex(int two_j, int sigma, Real mu)>;

struct PovmChannel {
    int nu = 0;
    RepLabel rep;
    AmplitudeFn amplitude;
    // (sigma, two_j) pairs where F may be nonzero.
    std::vector<std::pair<int, int>> active;
    // Constant-in-mu channels admit composed analytic gradients.
    bool mu_independent = false;
};

struct PovmSpec {
    std::vector<PovmChannel> channels;
    MassWindow window;
    bool quasi_baricentric = false;
    std::vector<std::string> warnings;
};

PovmSpec make_povm_spec(std::vector<PovmChannel> channels, MassWindow window = {});

// True iff every channel's active components have M = j with the trivial
// representation at j = 0 and c = 0 at j > 0.
bool is_quasi_baricentric(const PovmSpec& spec);

// Max over (j, mu, sigma, sigma') of |sum_channels conj(F) F - delta|.
// sigma_count = 0 derives the sigma set from the channels.
Real validate_normalization(const PovmSpec& spec, const std::vector<int>& two_j_list,
                            const std::vector<Real>& mu_samples, int sigma_count = 0);

struct FilteredChannel {
    int channel_index = 0;
    int nu = 0;
    RepLabel rep;
    WaveFunction phi;
};

struct FilteredWaveFunction {
    std::vector<FilteredChannel> channels;

    Real total_norm_squared(int threads = 1) const;
};

// phi_{channel, j, m}(k) = sum_sigma F^j_{channel, sigma}(mu) psi_{sigma j m}(k).
FilteredWaveFunction filter_wavefunction(const PovmSpec& spec, const WaveFunction& psi,
                                         int threads = 1);

// Identity filter: one channel per (sigma0, two_j0) with F = delta_{sigma sigma0}
// delta_{j j0} and the variance-minimizing representation (M = j; c = 1 at
// j = 0, c = 0 otherwise).
PovmSpec identity_quasi_baricentric(const std::vector<std::pair<int, int>>& sigma_two_j,
                                    MassWindow window = {});

// Two-channel splitting of the identity filter with weights cos(alpha) and
// sin(alpha); requires states confined to the given sigma.
PovmSpec rotated_identity(Real alpha, int sigma, const std::vector<int>& two_j_list,
                          MassWindow window = {});

// Scalar element of the lower-index S_alpha matrix at momentum k. Blocks
// outside the representation's spin tower give zero.
Complex s_element(int alpha, const RepLabel& rep, int two_j_to, int two_m_to,
                  int two_j_from, int two_m_from, const FourVector& k);

// Dense (2 j_to + 1) x (2 j_from + 1) block assembled from the materialized
// generator blocks; |j_to - j_from| <= 1 and both levels inside the blocks.
ComplexMatrix s_matrix(int alpha, const RepLabel& rep, const BoostGeneratorBlocks& blocks,
                       SpinLabel j_from, SpinLabel j_to, const FourVector& k);

// Max relative deviation of k^alpha S_alpha (upper index) from zero over the
// (j_to, j_from) block.
Real s_transversality_check(const RepLabel& rep, const BoostGeneratorBlocks& blocks,
                            SpinLabel j_from, SpinLabel j_to, const FourVector& k);

// Max relative deviation of the raising bilinears from their closed forms:
// S_0 product against mu^-4 Q A and the r-summed product against
// mu^-2 Q (j+1)(2j+3) + mu^-4 Q A.
Real s_bilinear_check(const RepLabel& rep, const BoostGeneratorBlocks& blocks, SpinLabel j,
                      const FourVector& k);

struct AlgebraScanRow {
    std::string check;
    RepLabel rep;
    Real max_residual = 0;
};

struct AlgebraScanResult {
    std::vector<AlgebraScanRow> rows;
    Real max_residual = 0;
    Real threshold = 1e-11;
    int rep_count = 0;
    int momentum_samples = 0;

    bool passed() const { return max_residual <= threshold; }
};

// Residual sweep over every valid representation with |M| <= j_max assembled
// from c in {0, 0.5, 2i}: generator commutator block laws, bilinear products
// of the generator blocks, boost-matrix bilinears, and transversality, the
// momentum-dependent checks on seeded random future-cone samples. One row per
// (check, representation); residuals are relative.
AlgebraScanResult algebra_scan(int two_j_max, int samples, std::uint64_t seed = 20260818);

}  // namespace eventpovm
