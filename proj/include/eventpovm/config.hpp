#pragma once

#include <array>
#include <string>
#include <vector>

#include "eventpovm/kinematics.hpp"

namespace eventpovm {

struct WavefunctionConfig {
    std::string family = "gaussian_scalar";
    std::array<Real, 4> center{6.0, 0.0, 0.0, 0.0};
    std::array<Real, 4> width{0.5, 0.5, 0.5, 0.5};
    Real j = 0.0;
    Real m = 0.0;
    int poly_degree = 0;
    std::array<Real, 2> g_center{1.5, 0.0};
    std::array<Real, 2> g_width{0.2, 1.0};

    friend bool operator==(const WavefunctionConfig&, const WavefunctionConfig&) = default;
};

struct PovmConfig {
    std::string name = "identity_quasi_baricentric";
    Real alpha = 0.0;
    std::array<Real, 2> window{0.0, 0.0};

    friend bool operator==(const PovmConfig&, const PovmConfig&) = default;
};

struct GridConfig {
    bool auto_box = true;
    std::array<Real, 4> kmin{};
    std::array<Real, 4> kmax{};
    int points_per_axis = 64;
    Real leak_tol = 1e-6;

    friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct DensityConfig {
    int points_per_axis = 48;
    Real span = 4.3;

    friend bool operator==(const DensityConfig&, const DensityConfig&) = default;
};

struct LimitStudyConfig {
    std::vector<int> j_list{16, 64, 256, 1024};
    int points_per_axis = 40;
    Real leak_tol = 0.02;
    Real mass_floor = 0.05;

    friend bool operator==(const LimitStudyConfig&, const LimitStudyConfig&) = default;
};

struct AlgebraChecksConfig {
    int two_j_max = 4;
    int samples = 10;

    friend bool operator==(const AlgebraChecksConfig&, const AlgebraChecksConfig&) = default;
};

struct OutputConfig {
    std::string directory;
    std::vector<std::string> formats{"json", "csv", "binary"};

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct ToleranceConfig {
    Real norm_tol = 1e-6;
    Real face_tol = 1e-4;

    friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

struct RunSettings {
    int threads = 1;
    bool recenter = true;

    friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct RunConfig {
    int schema_version = 1;
    std::vector<std::string> tasks{"variances"};
    WavefunctionConfig wavefunction;
    PovmConfig povm;
    GridConfig grid;
    DensityConfig density;
    LimitStudyConfig limit_study;
    AlgebraChecksConfig algebra_checks;
    OutputConfig output;
    ToleranceConfig tolerances;
    RunSettings run;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Strict key-value config: [section] headers, key = value lines, # comments.
// Values are strings, numbers, booleans, or flat arrays. Unknown sections or
// keys are hard errors with line diagnostics; validation collects every
// violation into one error message.
RunConfig parse_config_text(const std::string& text, const std::string& origin = "config");
RunConfig parse_config(const std::string& path);

// Canonical serialization; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const RunConfig& config);

}  // namespace eventpovm
