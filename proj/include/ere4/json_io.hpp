#ifndef ERE4_JSON_IO_HPP
#define ERE4_JSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "ere4/central_config.hpp"

namespace ere4 {

/// Fixed 17-significant-digit formatting; reports are byte-identical across
/// repeated runs.
std::string fmt17(double x);

/// Small order-preserving JSON emitter (std JSON syntax, 2-space indent).
/// Parsing uses nlohmann::json; emission goes through this writer so float
/// formatting and key order stay pinned.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& number(double v);
    JsonWriter& integer(long long v);
    JsonWriter& boolean(bool v);
    JsonWriter& text(const std::string& v);
    JsonWriter& complex_pair(Complex v);
    JsonWriter& real_array(const double* data, std::size_t count);

    const std::string& str() const { return buf_; }

  private:
    void pre_value();
    void newline();

    std::string buf_;
    int depth_ = 0;
    bool pending_key_ = false;
    std::vector<bool> has_items_;
};

/// Parsed CLI input file: masses plus optional explicit positions.
struct InputConfig {
    MassVector masses{};
    std::optional<PositionVector> positions;
};

InputConfig parse_input_config(const std::string& json_text);
InputConfig load_input_config(const std::string& path);

/// Grid request for the scan subcommand.  The mass parameter is the centroid
/// mass of the triangle_plus_center family; the other families are fixed
/// equal-mass points and take no grid.
struct ScanSpec {
    Family family = Family::square;
    std::vector<double> mass_params;  // one entry per mass point
    std::vector<double> e_grid;
    double p = 1.0;
    double tol = 1e-12;
    std::string out;  // optional output path; CLI --out overrides
};

ScanSpec parse_scan_spec(const std::string& json_text);
ScanSpec load_scan_spec(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace ere4

#endif
