#include "qsl/text_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "qsl/error.hpp"

namespace qsl {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

// "re+imj" / "re-imj".
Complex parse_entry(std::string_view tok, int line) {
  const std::string s(tok);
  if (s.size() < 2 || s.back() != 'j') throw ParseError("entry '" + s + "' must have the form re+imj", line);
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double re = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE || (*end != '+' && *end != '-'))
    throw ParseError("entry '" + s + "' has a malformed real part", line);
  const char* im_begin = end;
  const double im = std::strtod(im_begin, &end);
  if (end == im_begin || errno == ERANGE || end != begin + s.size() - 1)
    throw ParseError("entry '" + s + "' has a malformed imaginary part", line);
  return {re, im};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string serialize_density(const Matrix4c& rho) {
  std::string out;
  char buf[96];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      // %+ on the imaginary part yields the separating sign; -0.0 prints as "-0".
      std::snprintf(buf, sizeof buf, "%.16e%+.16ej", rho(r, c).real(), rho(r, c).imag());
      if (c > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Matrix4c parse_matrix(std::string_view text) {
  Matrix4c m;
  int row = 0;
  int lineno = 0;
  for (std::string_view raw : split_lines(text)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (row == 4) throw ParseError("unexpected extra row in density matrix", lineno);
    const auto toks = split_ws(line);
    if (toks.size() != 4)
      throw ParseError("expected 4 entries per row, found " + std::to_string(toks.size()), lineno);
    for (int c = 0; c < 4; ++c) m(row, c) = parse_entry(toks[c], lineno);
    ++row;
  }
  if (row != 4) throw ParseError("expected 4 rows, found " + std::to_string(row));
  return m;
}

DensityMatrix parse_density(std::string_view text) { return DensityMatrix(parse_matrix(text)); }

std::string serialize_counts(const CountRecord& rec, const ProjectorSet& set) {
  std::ostringstream os;
  os << "# n_per_basis = " << format_double(rec.n_per_basis) << '\n';
  os << "# seed = " << rec.seed << '\n';
  for (int nu = 0; nu < kNumSettings; ++nu) os << set[nu].label << '\t' << rec.counts[nu] << '\n';
  return os.str();
}

CountRecord parse_counts(std::string_view text, const ProjectorSet& set) {
  CountRecord rec;
  std::array<bool, kNumSettings> seen{};
  int lineno = 0;
  int entries = 0;
  for (std::string_view raw : split_lines(text)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      // Optional metadata: "# key = value".
      const std::string_view body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string key(trim(body.substr(0, eq)));
      const std::string value(trim(body.substr(eq + 1)));
      try {
        if (key == "n_per_basis") rec.n_per_basis = std::stod(value);
        if (key == "seed") rec.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw ParseError("malformed metadata value for '" + key + "'", lineno);
      }
      continue;
    }
    const auto toks = split_ws(line);
    if (toks.size() != 2) throw ParseError("expected 'LABEL<TAB>COUNT'", lineno);
    const std::string label(toks[0]);
    const int nu = set.index_of(label);
    if (nu < 0) throw ParseError("unknown basis label '" + label + "'", lineno);
    if (seen[nu]) throw ParseError("duplicate basis label '" + label + "'", lineno);
    const std::string value(toks[1]);
    std::size_t used = 0;
    long long count = 0;
    try {
      count = std::stoll(value, &used);
    } catch (const std::exception&) {
      throw ParseError("count '" + value + "' is not an integer", lineno);
    }
    if (used != value.size()) throw ParseError("count '" + value + "' is not an integer", lineno);
    if (count < 0) throw ParseError("negative count for basis '" + label + "'", lineno);
    seen[nu] = true;
    rec.counts[nu] = count;
    ++entries;
  }
  if (entries != kNumSettings) {
    std::string missing;
    for (int nu = 0; nu < kNumSettings; ++nu)
      if (!seen[nu]) missing += (missing.empty() ? "" : ", ") + set[nu].label;
    throw ParseError("expected " + std::to_string(kNumSettings) + " count lines, found " + std::to_string(entries) +
                     "; missing basis " + missing);
  }
  return rec;
}

PlaneDataset make_plane_dataset(std::vector<PlanePoint> points, int resolution) {
  if (resolution < 2) throw InvariantViolation("plane resolution must be >= 2");
  PlaneDataset ds;
  ds.points = std::move(points);
  ds.werner = werner_curve(resolution);
  ds.maximal = mems_curve(resolution);
  return ds;
}

std::string serialize_plane_points(const std::vector<PlanePoint>& points) {
  std::ostringstream os;
  os << "label\ts_l\ts_l_err\tt\tt_err\n";
  for (const PlanePoint& p : points)
    os << p.label << '\t' << format_double(p.s_l) << '\t' << format_double(p.s_l_err) << '\t' << format_double(p.t)
       << '\t' << format_double(p.t_err) << '\n';
  return os.str();
}

std::string serialize_curve(const std::vector<PlanePoint>& curve) {
  std::ostringstream os;
  os << "s_l\tt\n";
  for (const PlanePoint& p : curve) os << format_double(p.s_l) << '\t' << format_double(p.t) << '\n';
  return os.str();
}

PlaneDataset emit_plane(std::vector<PlanePoint> points, int resolution, const std::filesystem::path& dir) {
  PlaneDataset ds = make_plane_dataset(std::move(points), resolution);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  write_text_file(dir / kPlanePointsFile, serialize_plane_points(ds.points));
  write_text_file(dir / kWernerCurveFile, serialize_curve(ds.werner));
  write_text_file(dir / kMaximalCurveFile, serialize_curve(ds.maximal));
  return ds;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace qsl
