#include "ere4/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ere4 {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void JsonWriter::pre_value() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!has_items_.empty()) {
        if (has_items_.back()) buf_ += ',';
        has_items_.back() = true;
        newline();
    }
}

void JsonWriter::newline() {
    buf_ += '\n';
    buf_.append(static_cast<std::size_t>(2 * depth_), ' ');
}

JsonWriter& JsonWriter::begin_object() {
    pre_value();
    buf_ += '{';
    ++depth_;
    has_items_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    const bool had = has_items_.back();
    has_items_.pop_back();
    --depth_;
    if (had) newline();
    buf_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    pre_value();
    buf_ += '[';
    ++depth_;
    has_items_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    const bool had = has_items_.back();
    has_items_.pop_back();
    --depth_;
    if (had) newline();
    buf_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
    if (has_items_.back()) buf_ += ',';
    has_items_.back() = true;
    newline();
    buf_ += '"';
    buf_ += name;
    buf_ += "\": ";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::number(double v) {
    pre_value();
    buf_ += fmt17(v);
    return *this;
}

JsonWriter& JsonWriter::integer(long long v) {
    pre_value();
    buf_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::boolean(bool v) {
    pre_value();
    buf_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::text(const std::string& v) {
    pre_value();
    buf_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\') buf_ += '\\';
        buf_ += c;
    }
    buf_ += '"';
    return *this;
}

JsonWriter& JsonWriter::complex_pair(Complex v) {
    begin_array();
    number(v.real());
    number(v.imag());
    return end_array();
}

JsonWriter& JsonWriter::real_array(const double* data, std::size_t count) {
    begin_array();
    for (std::size_t i = 0; i < count; ++i) number(data[i]);
    return end_array();
}

namespace {

using nlohmann::json;

double positive_number(const json& j, const char* what) {
    if (!j.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
    return v;
}

}  // namespace

InputConfig parse_input_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("input is not valid JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("masses"))
        throw std::invalid_argument("input must be an object with a \"masses\" array");

    InputConfig cfg;
    const json& jm = j["masses"];
    if (!jm.is_array() || jm.size() != 4) throw std::invalid_argument("\"masses\" must have 4 entries");
    for (int i = 0; i < 4; ++i) cfg.masses[i] = positive_number(jm[i], "mass");

    if (j.contains("positions") && !j["positions"].is_null()) {
        const json& jp = j["positions"];
        if (!jp.is_array() || jp.size() != 4)
            throw std::invalid_argument("\"positions\" must have 4 entries");
        PositionVector z;
        for (int i = 0; i < 4; ++i) {
            const json& pt = jp[i];
            if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
                throw std::invalid_argument("each position must be [x, y]");
            z[i] = Complex(pt[0].get<double>(), pt[1].get<double>());
        }
        cfg.positions = z;
    }
    return cfg;
}

InputConfig load_input_config(const std::string& path) {
    return parse_input_config(read_file(path));
}

ScanSpec parse_scan_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("scan spec is not valid JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("family") || !j.contains("e_grid"))
        throw std::invalid_argument("scan spec needs \"family\" and \"e_grid\"");

    ScanSpec spec;
    spec.family = family_from_string(j["family"].get<std::string>());
    if (spec.family == Family::custom)
        throw std::invalid_argument("scan requires a named family");

    const json& je = j["e_grid"];
    if (!je.is_array() || je.empty()) throw std::invalid_argument("\"e_grid\" must be non-empty");
    for (const auto& v : je) {
        if (!v.is_number()) throw std::invalid_argument("e values must be numbers");
        const double e = v.get<double>();
        if (e < 0.0 || e > 0.99) throw std::invalid_argument("e must lie in [0, 0.99]");
        spec.e_grid.push_back(e);
    }

    if (j.contains("mass_param_grid")) {
        if (spec.family != Family::triangle_plus_center)
            throw std::invalid_argument("mass_param_grid is only meaningful for triangle_plus_center");
        const json& jg = j["mass_param_grid"];
        if (!jg.is_array() || jg.empty())
            throw std::invalid_argument("\"mass_param_grid\" must be non-empty");
        for (const auto& v : jg) {
            const double t = positive_number(v, "mass parameter");
            if (t >= 1.0) throw std::invalid_argument("centroid mass parameter must lie in (0, 1)");
            spec.mass_params.push_back(t);
        }
    } else {
        spec.mass_params.push_back(0.25);
    }

    if (j.contains("p")) spec.p = positive_number(j["p"], "p");
    if (j.contains("tol")) {
        if (!j["tol"].is_number()) throw std::invalid_argument("tol must be a number");
        spec.tol = j["tol"].get<double>();
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw std::invalid_argument("out must be a path string");
        spec.out = j["out"].get<std::string>();
    }
    return spec;
}

ScanSpec load_scan_spec(const std::string& path) { return parse_scan_spec(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << contents;
}

}  // namespace ere4
