#include "casimir/io.hpp"
#include "casimir/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace casimir::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("io: cannot write '" + path + "'");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("io: cannot read '" + path + "'");
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

void expect_header(const std::string& path, std::ifstream& in,
                   const std::string& expected) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("io: '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected)
        throw IoError("io: '" + path + "' has header '" + line + "', expected '" +
                      expected + "'");
}

double cell_double(const std::string& path, const std::string& cell) {
    try {
        size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw IoError("io: '" + path + "': bad numeric cell '" + cell + "'");
    }
}

int cell_int(const std::string& path, const std::string& cell) {
    try {
        size_t pos = 0;
        const int v = std::stoi(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw IoError("io: '" + path + "': bad integer cell '" + cell + "'");
    }
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_gradient_csv(const std::string& path, const std::vector<GradientRow>& rows) {
    auto out = open_out(path);
    out << "a_nm,fprime_T,fprime_0,band_T_lo,band_T_hi,band_0_lo,band_0_hi\n";
    for (const auto& r : rows)
        out << format_number(r.a_nm) << ',' << format_number(r.fprime_t) << ','
            << format_number(r.fprime_0) << ',' << format_number(r.band_t_lo) << ','
            << format_number(r.band_t_hi) << ',' << format_number(r.band_0_lo) << ','
            << format_number(r.band_0_hi) << '\n';
}

void write_thermal_csv(const std::string& path, const std::vector<ThermalRow>& rows) {
    auto out = open_out(path);
    out << "a_nm,fprime_T,fprime_0,delta_rel,delta_rel_implicit\n";
    for (const auto& r : rows)
        out << format_number(r.a_nm) << ',' << format_number(r.fprime_t) << ','
            << format_number(r.fprime_0) << ',' << format_number(r.delta_rel) << ','
            << format_number(r.delta_rel_implicit) << '\n';
}

void write_regime_csv(const std::string& path, const std::vector<RegimeRow>& rows) {
    auto out = open_out(path);
    out << "pair,fraction,a_nm\n";
    for (const auto& r : rows)
        out << r.pair << ',' << format_number(r.fraction) << ','
            << format_number(r.a_nm) << '\n';
}

std::vector<calibration::ShiftRecord> read_shifts_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(path, in, "z_piezo_nm,voltage_v,delta_omega_rad_s,set_id,run_id");
    std::vector<calibration::ShiftRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 5)
            throw IoError("io: '" + path + "': expected 5 columns, got " +
                          std::to_string(cells.size()));
        calibration::ShiftRecord r;
        r.z_piezo_nm = cell_double(path, cells[0]);
        r.voltage_v = cell_double(path, cells[1]);
        r.delta_omega_rad_s = cell_double(path, cells[2]);
        r.set_id = cell_int(path, cells[3]);
        r.run_id = cell_int(path, cells[4]);
        out.push_back(r);
    }
    if (out.empty()) throw IoError("io: '" + path + "' has no data rows");
    return out;
}

void write_shifts_csv(const std::string& path,
                      const std::vector<calibration::ShiftRecord>& records) {
    auto out = open_out(path);
    out << "z_piezo_nm,voltage_v,delta_omega_rad_s,set_id,run_id\n";
    for (const auto& r : records)
        out << format_number(r.z_piezo_nm) << ',' << format_number(r.voltage_v) << ','
            << format_number(r.delta_omega_rad_s) << ',' << r.set_id << ','
            << r.run_id << '\n';
}

void write_calibration_json(const std::string& path,
                            const calibration::CalibrationFit& fit) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["v0_v"] = fit.v0_v;
    j["v0_err_v"] = fit.v0_err_v;
    j["z0_nm"] = fit.z0_nm;
    j["z0_err_nm"] = fit.z0_err_nm;
    j["c_s_per_kg"] = fit.c_s_per_kg;
    j["c_err"] = fit.c_err;
    j["line_d_v"] = fit.line_d_v;
    j["line_theta_v_per_nm"] = fit.line_theta_v_per_nm;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

calibration::CalibrationFit read_calibration_json(const std::string& path) {
    auto in = open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("io: '" + path + "': " + e.what());
    }
    calibration::CalibrationFit fit;
    try {
        fit.v0_v = j.at("v0_v").get<double>();
        fit.v0_err_v = j.at("v0_err_v").get<double>();
        fit.z0_nm = j.at("z0_nm").get<double>();
        fit.z0_err_nm = j.at("z0_err_nm").get<double>();
        fit.c_s_per_kg = j.at("c_s_per_kg").get<double>();
        fit.c_err = j.at("c_err").get<double>();
        fit.line_d_v = j.at("line_d_v").get<double>();
        fit.line_theta_v_per_nm = j.at("line_theta_v_per_nm").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("io: '" + path + "': " + e.what());
    }
    return fit;
}

analysis::MeasurementSeries read_measurements_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(path, in, "a_nm,gradient_un_per_m,err_gradient_un_per_m,err_a_nm");
    analysis::MeasurementSeries series;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 4)
            throw IoError("io: '" + path + "': expected 4 columns, got " +
                          std::to_string(cells.size()));
        analysis::MeasurementPoint p;
        p.a_nm = cell_double(path, cells[0]);
        p.gradient_un_per_m = cell_double(path, cells[1]);
        p.err_gradient_un_per_m = cell_double(path, cells[2]);
        p.err_a_nm = cell_double(path, cells[3]);
        series.points.push_back(p);
    }
    if (series.points.empty()) throw IoError("io: '" + path + "' has no data rows");
    return series;
}

void write_measurements_csv(const std::string& path,
                            const std::vector<calibration::GradientSample>& samples) {
    auto out = open_out(path);
    out << "a_nm,gradient_un_per_m,err_gradient_un_per_m,err_a_nm\n";
    for (const auto& s : samples)
        out << format_number(s.a_nm) << ',' << format_number(s.gradient_un_per_m)
            << ',' << format_number(s.err_gradient_un_per_m) << ','
            << format_number(s.err_a_nm) << '\n';
}

void write_compare_csv(const std::string& path, const analysis::ComparisonReport& report) {
    auto out = open_out(path);
    out << "a_nm,diff_un_per_m,halfwidth_un_per_m,excluded\n";
    for (const auto& d : report.differences) {
        int excluded = 0;
        for (const auto& iv : report.excluded_intervals)
            if (d.a_nm >= iv.a_lo_nm && d.a_nm <= iv.a_hi_nm) {
                excluded = 1;
                break;
            }
        out << format_number(d.a_nm) << ',' << format_number(d.diff_un_per_m) << ','
            << format_number(d.halfwidth_un_per_m) << ',' << excluded << '\n';
    }
}

void write_compare_json(const std::string& path, const analysis::ComparisonReport& report,
                        const std::vector<analysis::ThermalPoint>& thermal) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["differences"] = nlohmann::ordered_json::array();
    for (const auto& d : report.differences)
        j["differences"].push_back({{"a_nm", d.a_nm},
                                    {"diff_un_per_m", d.diff_un_per_m},
                                    {"halfwidth_un_per_m", d.halfwidth_un_per_m}});
    j["excluded_intervals"] = nlohmann::ordered_json::array();
    for (const auto& iv : report.excluded_intervals)
        j["excluded_intervals"].push_back({{"a_lo_nm", iv.a_lo_nm},
                                           {"a_hi_nm", iv.a_hi_nm}});
    j["data_thermal_correction"] = nlohmann::ordered_json::array();
    for (const auto& t : thermal)
        j["data_thermal_correction"].push_back(
            {{"a_nm", t.a_nm}, {"delta_un_per_m", t.delta_un_per_m}});
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void ensure_directory(const std::string& dir) {
    if (dir.empty() || dir == ".") return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("io: cannot create directory '" + dir + "': " + ec.message());
}

} // namespace casimir::io
