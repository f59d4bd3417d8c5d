#include "eventpovm/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace eventpovm {

namespace {

std::string csv_real(Real x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

template <typename T>
OrderedJson to_array4(const std::array<T, 4>& a) {
    return OrderedJson::array({a[0], a[1], a[2], a[3]});
}

void atomic_commit(const std::string& path, const std::string& tmp) {
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move temporary file onto '" + path + "'");
    }
}

}  // namespace

OrderedJson variance_report_json(const VarianceReport& report) {
    OrderedJson doc;
    doc["schema_version"] = 1;
    doc["mean_x"] = to_array4(report.mean_x);
    doc["second_moment_x"] = to_array4(report.second_moment_x);
    doc["mean_k"] = to_array4(report.mean_k);
    doc["var_k"] = to_array4(report.var_k);
    doc["spin_mass_term"] = report.spin_mass_term;
    doc["heisenberg_margin"] = to_array4(report.heisenberg_margin);
    doc["angular_bound_margin"] = report.angular_bound_margin;
    doc["angular_bound_applicable"] = report.angular_bound_applicable;
    OrderedJson prov;
    prov["gradient_source"] = report.provenance.gradient_source;
    prov["second_moment_path"] = report.provenance.second_moment_path;
    prov["mean_imag_residue"] = report.provenance.mean_imag_residue;
    prov["total_probability"] = report.provenance.total_probability;
    prov["face_decay_ratio"] = report.provenance.face_decay_ratio;
    prov["cone_clip_fraction"] = report.provenance.cone_clip_fraction;
    prov["convergent"] = report.provenance.convergent;
    prov["recentered"] = report.provenance.recentered;
    doc["provenance"] = prov;
    return doc;
}

OrderedJson inequalities_json(const VarianceReport& report, Real margin_tol) {
    OrderedJson doc;
    doc["schema_version"] = 1;
    doc["margin_tolerance"] = margin_tol;
    doc["heisenberg_margin"] = to_array4(report.heisenberg_margin);
    OrderedJson satisfied = OrderedJson::array();
    bool all = true;
    for (int a = 0; a < 4; ++a) {
        const bool ok = report.heisenberg_margin[a] >= -margin_tol;
        satisfied.push_back(ok);
        all = all && ok;
    }
    doc["heisenberg_satisfied"] = satisfied;
    doc["angular_bound_margin"] = report.angular_bound_margin;
    doc["angular_bound_applicable"] = report.angular_bound_applicable;
    const bool angular_ok =
        !report.angular_bound_applicable || report.angular_bound_margin >= -margin_tol;
    doc["angular_bound_satisfied"] = angular_ok;
    doc["all_satisfied"] = all && angular_ok;
    return doc;
}

OrderedJson limit_study_json(const LimitStudy& study) {
    OrderedJson doc;
    doc["schema_version"] = 1;
    doc["a_value"] = study.a_value;
    doc["limit_targets"] = to_array4(study.limit_targets);
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : study.rows) {
        OrderedJson row;
        row["j"] = r.j;
        row["second_moment_x"] = to_array4(r.second_moment_x);
        row["spin_mass_term"] = r.spin_mass_term;
        row["cone_clip_fraction"] = r.cone_clip_fraction;
        row["raw_norm_squared"] = r.raw_norm_squared;
        rows.push_back(row);
    }
    doc["rows"] = rows;
    return doc;
}

std::string limit_study_csv(const LimitStudy& study) {
    std::string out =
        "j,x0_second_moment,x1_second_moment,x2_second_moment,x3_second_moment,"
        "spin_mass_term,cone_clip_fraction,raw_norm_squared\n";
    for (const auto& r : study.rows) {
        out += csv_real(r.j);
        for (int a = 0; a < 4; ++a) out += "," + csv_real(r.second_moment_x[a]);
        out += "," + csv_real(r.spin_mass_term);
        out += "," + csv_real(r.cone_clip_fraction);
        out += "," + csv_real(r.raw_norm_squared);
        out += "\n";
    }
    out += "limit";
    for (int a = 0; a < 4; ++a) out += "," + csv_real(study.limit_targets[a]);
    out += "," + csv_real(study.a_value) + ",,\n";
    return out;
}

OrderedJson algebra_scan_json(const AlgebraScanResult& scan) {
    OrderedJson doc;
    doc["schema_version"] = 1;
    doc["rep_count"] = scan.rep_count;
    doc["momentum_samples"] = scan.momentum_samples;
    doc["threshold"] = scan.threshold;
    doc["max_residual"] = scan.max_residual;
    doc["passed"] = scan.passed();
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : scan.rows) {
        OrderedJson row;
        row["check"] = r.check;
        row["two_m"] = r.rep.two_m;
        row["c_re"] = r.rep.c_re;
        row["c_im"] = r.rep.c_im;
        row["max_residual"] = r.max_residual;
        rows.push_back(row);
    }
    doc["rows"] = rows;
    return doc;
}

std::string algebra_scan_csv(const AlgebraScanResult& scan) {
    std::string out = "check,two_m,c_re,c_im,max_residual\n";
    for (const auto& r : scan.rows) {
        out += r.check + "," + std::to_string(r.rep.two_m) + "," + csv_real(r.rep.c_re) +
               "," + csv_real(r.rep.c_im) + "," + csv_real(r.max_residual) + "\n";
    }
    return out;
}

OrderedJson density_sidecar_json(const DensityField& density, Real psi_norm_squared,
                                 const std::string& binary_name) {
    OrderedJson doc;
    doc["schema_version"] = 1;
    doc["binary_file"] = binary_name;
    doc["dtype"] = "float64-little-endian";
    doc["layout"] = "x0-major";
    OrderedJson axes = OrderedJson::array();
    for (int a = 0; a < 4; ++a) {
        OrderedJson ax;
        ax["min"] = density.grid.axis(a).min;
        ax["max"] = density.grid.axis(a).max;
        ax["points"] = density.grid.axis(a).n;
        axes.push_back(ax);
    }
    doc["axes"] = axes;
    doc["cell_volume"] = density.grid.cell_volume();
    doc["total"] = density.total;
    doc["boundary_share"] = density.boundary_share;
    doc["psi_norm_squared"] = psi_norm_squared;
    doc["total_probability_error"] = check_total_probability(density, psi_norm_squared);
    return doc;
}

std::string density_slice_csv(const DensityField& density) {
    const SpacetimeGrid& grid = density.grid;
    const int i0 = grid.axis(0).n / 2;
    const int i3 = grid.axis(3).n / 2;
    std::string out = "x1,x2,rho\n";
    for (int i1 = 0; i1 < grid.axis(1).n; ++i1) {
        for (int i2 = 0; i2 < grid.axis(2).n; ++i2) {
            const std::int64_t flat = grid.flatten({i0, i1, i2, i3});
            out += csv_real(grid.node(1, i1)) + "," + csv_real(grid.node(2, i2)) + "," +
                   csv_real(density.values[flat]) + "\n";
        }
    }
    return out;
}

std::string json_to_text(const OrderedJson& doc) { return doc.dump(2) + "\n"; }

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    }
    atomic_commit(path, tmp);
}

void write_density_binary_atomic(const std::string& path, const DensityField& density) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out.write(reinterpret_cast<const char*>(density.values.data()),
                  static_cast<std::streamsize>(sizeof(Real) * density.values.size()));
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    }
    atomic_commit(path, tmp);
}

}  // namespace eventpovm
