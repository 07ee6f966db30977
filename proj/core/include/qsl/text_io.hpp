#pragma once

// Plain-text formats:
//
//   density matrix  4 lines of 4 entries "re+imj", 17 significant digits;
//                   '#' comment lines and blank lines are ignored.
//   counts          16 lines "LABEL<TAB>INTEGER" using the projector-set labels;
//                   optional "# n_per_basis = X" / "# seed = N" metadata lines.
//   plane points    tab-separated, header "label s_l s_l_err t t_err".
//   boundary curve  tab-separated, header "s_l t", sorted by s_l.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/families.hpp"
#include "qsl/state.hpp"
#include "qsl/tomography.hpp"

namespace qsl {

std::string serialize_density(const Matrix4c& rho);
inline std::string serialize_density(const DensityMatrix& rho) { return serialize_density(rho.matrix()); }

/// Reads the 4x4 layout without validating the density-matrix invariants.
Matrix4c parse_matrix(std::string_view text);

/// parse_matrix, then validation. Throws ParseError for malformed text and
/// InvariantViolation (with the defect report) for unphysical content.
DensityMatrix parse_density(std::string_view text);

std::string serialize_counts(const CountRecord& rec, const ProjectorSet& set = standard_projectors());

/// Labels must match `set` exactly, each exactly once.
CountRecord parse_counts(std::string_view text, const ProjectorSet& set = standard_projectors());

/// Sampled reference curves for the tangle / linear-entropy plane.
struct PlaneDataset {
  std::vector<PlanePoint> points;
  std::vector<PlanePoint> werner;   // sorted by s_l
  std::vector<PlanePoint> maximal;  // sorted by s_l
};

PlaneDataset make_plane_dataset(std::vector<PlanePoint> points, int resolution);

std::string serialize_plane_points(const std::vector<PlanePoint>& points);
std::string serialize_curve(const std::vector<PlanePoint>& curve);

/// File names written by emit_plane inside the output directory.
inline constexpr const char* kPlanePointsFile = "plane_points.tsv";
inline constexpr const char* kWernerCurveFile = "werner_boundary.tsv";
inline constexpr const char* kMaximalCurveFile = "maximal_boundary.tsv";

/// Writes the points file and both boundary files; throws IoError.
PlaneDataset emit_plane(std::vector<PlanePoint> points, int resolution, const std::filesystem::path& dir);

/// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace qsl
