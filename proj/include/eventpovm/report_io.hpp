#pragma once

#include <string>

#include "json.hpp"

#include "eventpovm/asymptotic_model.hpp"
#include "eventpovm/povm_core.hpp"
#include "eventpovm/spacetime_density.hpp"
#include "eventpovm/variance_engine.hpp"

namespace eventpovm {

using OrderedJson = nlohmann::ordered_json;

OrderedJson variance_report_json(const VarianceReport& report);
OrderedJson inequalities_json(const VarianceReport& report, Real margin_tol = 1e-6);

OrderedJson limit_study_json(const LimitStudy& study);
std::string limit_study_csv(const LimitStudy& study);

OrderedJson algebra_scan_json(const AlgebraScanResult& scan);
std::string algebra_scan_csv(const AlgebraScanResult& scan);

// Sidecar metadata for the flat little-endian float64 density dump.
OrderedJson density_sidecar_json(const DensityField& density, Real psi_norm_squared,
                                 const std::string& binary_name);
// Central (x0, x3) slice as plot-ready x1, x2, rho rows.
std::string density_slice_csv(const DensityField& density);

std::string json_to_text(const OrderedJson& doc);

// Both writers go through a temp file in the target directory plus rename.
void write_text_atomic(const std::string& path, const std::string& text);
void write_density_binary_atomic(const std::string& path, const DensityField& density);

}  // namespace eventpovm
