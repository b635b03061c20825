#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypfol/bloch.hpp"
#include "hypfol/foliation.hpp"
#include "hypfol/grid_domain.hpp"
#include "hypfol/holmap.hpp"
#include "hypfol/liouville.hpp"
#include "hypfol/vector_field.hpp"

namespace hypfol::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kConvention = "curvature -1, lambda_disc(0)=2";

// ------------------------------------------------------------ scalars

/// %.17g, or "inf" / "-inf". NaN throws Error.
std::string format_number(double x);
Json number(double x);
/// Accepts a JSON number or the strings "inf" / "-inf".
double to_number(const Json& j, const std::string& what);
Json complex_json(Complex z);
Complex to_complex(const Json& j, const std::string& what);

/// Rejects keys outside `allowed` and requires every key in `required`.
void check_keys(const Json& j, const std::vector<std::string>& allowed, const std::vector<std::string>& required,
                const std::string& what);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {version, convention, spacing}; spacing is null when not applicable.
Json report_header(std::optional<double> spacing = std::nullopt);
/// The header as "# key=value" lines.
std::string csv_header(std::optional<double> spacing = std::nullopt);

// ------------------------------------------------------------ domain objects

GridDomain grid_from_json(const Json& j);
Json grid_to_json(const GridDomain& g);
/// Columns re, im, lambda over inside cells.
std::string density_csv(const DensityField& field);

MultiPoly multipoly_from_json(const Json& j, int nvars);
PolyVectorField field_from_json(const Json& j);
Json field_to_json(const PolyVectorField& x);

ModelFoliation foliation_from_json(const Json& j);
FoliatedDomain foliated_domain_from_json(const Json& j);

HolMap holmap_from_json(const Json& j);
Json holmap_to_json(const HolMap& f);

/// {points: [[re, im, re, im, ...], ...]}.
std::vector<CVec> points_from_json(const Json& j);
Json point_json(const CVec& p);

// ------------------------------------------------------------ reports

Json bloch_report_json(const BlochReport& r);
Json convergence_report_json(const ConvergenceReport& r);

struct CurvatureRow {
  CVec z;
  double k_closed;
  double k_fd;
  double bound;
  bool pass;
};

/// Columns re0, im0, ..., K_closed, K_fd, bound, pass.
std::string curvature_csv(const std::vector<CurvatureRow>& rows, double step);

}  // namespace hypfol::io
