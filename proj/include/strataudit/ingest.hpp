#pragma once
// Corpus building: random point clouds and the binary-image -> contour ->
// simplified cycle-graph pipeline (threshold, trace, keep longest, simplify,
// perturb, clean). Also the .gsc text format.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "strataudit/complex.hpp"
#include "strataudit/geometry.hpp"

namespace strataudit {

struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<int> pixels;  // row-major, values in [0, maxval]

  int at(int x, int y) const { return pixels[y * width + x]; }
};

struct pnm_parse_error : std::runtime_error {
  std::size_t offset;
  pnm_parse_error(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " (byte offset " + std::to_string(off) + ")"),
        offset(off) {}
};

namespace detail {

// Token scanner for PNM headers: skips whitespace and '#' comments.
class PnmScanner {
 public:
  explicit PnmScanner(const std::string& bytes) : data_(bytes) {}

  std::string token() {
    skip_space();
    if (pos_ >= data_.size()) {
      throw pnm_parse_error("unexpected end of header", pos_);
    }
    std::size_t start = pos_;
    while (pos_ < data_.size() && !std::isspace(uc(data_[pos_]))) ++pos_;
    return data_.substr(start, pos_ - start);
  }

  int integer() {
    const std::size_t at = pos_;
    const std::string t = token();
    try {
      return std::stoi(t);
    } catch (const std::exception&) {
      throw pnm_parse_error("expected integer, got '" + t + "'", at);
    }
  }

  // Position just past a single whitespace byte (start of binary payload).
  std::size_t binary_payload_start() {
    if (pos_ >= data_.size()) {
      throw pnm_parse_error("missing payload", pos_);
    }
    return ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  static unsigned char uc(char c) { return static_cast<unsigned char>(c); }

  void skip_space() {
    while (pos_ < data_.size()) {
      if (std::isspace(uc(data_[pos_]))) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Decodes PBM/PGM (P1, P2, P4, P5). Bitmap formats map {0 -> 0, 1 -> maxval}
// with maxval 255, so shapes come out bright.
inline GrayImage parse_pnm(const std::string& bytes) {
  detail::PnmScanner scan(bytes);
  const std::string magic = scan.token();
  if (magic != "P1" && magic != "P2" && magic != "P4" && magic != "P5") {
    throw pnm_parse_error("unsupported magic '" + magic + "'", 0);
  }
  GrayImage img;
  img.width = scan.integer();
  img.height = scan.integer();
  if (img.width <= 0 || img.height <= 0) {
    throw pnm_parse_error("bad dimensions", scan.pos());
  }
  const bool bitmap = magic == "P1" || magic == "P4";
  if (!bitmap) {
    img.maxval = scan.integer();
    if (img.maxval <= 0 || img.maxval > 255) {
      throw pnm_parse_error("unsupported maxval", scan.pos());
    }
  } else {
    img.maxval = 255;
  }
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);

  if (magic == "P1" || magic == "P2") {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      const int v = scan.integer();
      img.pixels[i] = bitmap ? (v ? img.maxval : 0) : v;
      if (img.pixels[i] < 0 || img.pixels[i] > img.maxval) {
        throw pnm_parse_error("pixel out of range", scan.pos());
      }
    }
  } else if (magic == "P5") {
    const std::size_t start = scan.binary_payload_start();
    if (start + img.pixels.size() > bytes.size()) {
      throw pnm_parse_error("truncated payload", bytes.size());
    }
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      img.pixels[i] = static_cast<unsigned char>(bytes[start + i]);
    }
  } else {  // P4: rows padded to whole bytes, MSB first, 1 = foreground
    const std::size_t start = scan.binary_payload_start();
    const std::size_t row_bytes = (img.width + 7) / 8;
    if (start + row_bytes * img.height > bytes.size()) {
      throw pnm_parse_error("truncated payload", bytes.size());
    }
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        const unsigned char byte = static_cast<unsigned char>(
            bytes[start + y * row_bytes + x / 8]);
        const int bit = (byte >> (7 - x % 8)) & 1;
        img.pixels[y * img.width + x] = bit ? img.maxval : 0;
      }
    }
  }
  return img;
}

// Threshold maximizing between-class variance over the histogram; the
// smallest maximizer wins ties. Foreground is pixel > threshold.
inline int otsu_threshold(const GrayImage& img) {
  std::vector<std::int64_t> hist(img.maxval + 1, 0);
  for (int p : img.pixels) ++hist[p];
  int distinct = 0;
  for (auto c : hist) distinct += c > 0;
  if (distinct < 2) {
    throw std::invalid_argument("otsu_threshold: constant image");
  }
  const double total = static_cast<double>(img.pixels.size());
  double sum_all = 0;
  for (int v = 0; v <= img.maxval; ++v) sum_all += double(v) * hist[v];

  int best_t = 0;
  double best_var = -1;
  double w0 = 0, sum0 = 0;
  for (int t = 0; t <= img.maxval; ++t) {
    w0 += hist[t];
    sum0 += double(t) * hist[t];
    const double w1 = total - w0;
    if (w0 == 0 || w1 == 0) continue;
    const double mu0 = sum0 / w0;
    const double mu1 = (sum_all - sum0) / w1;
    const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  return best_t;
}

struct Contour {
  std::vector<Point2> points;  // pixel coordinates (x = column, y = row)
  bool closed = true;

  double arc_length() const {
    if (points.size() < 2) return 0;
    double len = 0;
    const std::size_t n = points.size();
    const std::size_t last = closed ? n : n - 1;
    for (std::size_t i = 0; i < last; ++i) {
      len += distance(points[i], points[(i + 1) % n]);
    }
    return len;
  }
};

namespace detail {

struct BinaryImage {
  int width = 0, height = 0;
  std::vector<std::uint8_t> fg;

  bool at(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return fg[y * width + x] != 0;
  }
};

inline BinaryImage binarize(const GrayImage& img, int threshold) {
  BinaryImage b;
  b.width = img.width;
  b.height = img.height;
  b.fg.resize(img.pixels.size());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    b.fg[i] = img.pixels[i] > threshold ? 1 : 0;
  }
  return b;
}

// Moore-neighbor border tracing with Jacob's stopping criterion,
// 8-connectivity. `start` must be the first foreground pixel of its
// component in row-major scan order (its west neighbor is background).
inline std::vector<Point2> moore_trace(const BinaryImage& img, int sx,
                                       int sy) {
  // Clockwise Moore neighborhood starting from West.
  static const int dx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  static const int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};

  std::vector<Point2> contour;
  int cx = sx, cy = sy;
  int backtrack = 0;  // index of the neighbor we entered from (west)
  contour.push_back({double(sx), double(sy)});
  const int start_backtrack = backtrack;
  int guard = img.width * img.height * 8 + 8;
  while (guard-- > 0) {
    int found = -1;
    for (int step = 1; step <= 8; ++step) {
      const int dir = (backtrack + step) % 8;
      if (img.at(cx + dx[dir], cy + dy[dir])) {
        found = dir;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    const int px = cx, py = cy;
    cx += dx[found];
    cy += dy[found];
    // New backtrack points from the new pixel toward the previous position's
    // last scanned background neighbor: the neighbor preceding `found`,
    // re-expressed from the new pixel.
    const int prev_dir = (found + 7) % 8;
    const int bx = px + dx[prev_dir], by = py + dy[prev_dir];
    backtrack = 0;
    for (int d = 0; d < 8; ++d) {
      if (cx + dx[d] == bx && cy + dy[d] == by) {
        backtrack = d;
        break;
      }
    }
    if (cx == sx && cy == sy && backtrack == start_backtrack) break;
    contour.push_back({double(cx), double(cy)});
  }
  return contour;
}

inline void flood_fill_label(const BinaryImage& img, std::vector<int>& labels,
                             int x, int y, int label) {
  std::vector<std::pair<int, int>> stack{{x, y}};
  labels[y * img.width + x] = label;
  while (!stack.empty()) {
    auto [cx, cy] = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = cx + dx, ny = cy + dy;
        if (!img.at(nx, ny)) continue;
        if (labels[ny * img.width + nx] >= 0) continue;
        labels[ny * img.width + nx] = label;
        stack.push_back({nx, ny});
      }
    }
  }
}

}  // namespace detail

// Outer borders of all 8-connected components; the contour with the longest
// polygonal arc length is returned.
inline Contour extract_longest_contour(const GrayImage& img, int threshold) {
  const detail::BinaryImage bin = detail::binarize(img, threshold);
  std::vector<int> labels(bin.fg.size(), -1);
  Contour best;
  double best_len = -1;
  int next_label = 0;
  for (int y = 0; y < bin.height; ++y) {
    for (int x = 0; x < bin.width; ++x) {
      if (!bin.at(x, y) || labels[y * bin.width + x] >= 0) continue;
      Contour c;
      c.points = detail::moore_trace(bin, x, y);
      c.closed = true;
      detail::flood_fill_label(bin, labels, x, y, next_label++);
      const double len = c.arc_length();
      if (len > best_len) {
        best_len = len;
        best = std::move(c);
      }
    }
  }
  if (best_len < 0) {
    throw std::invalid_argument("extract_longest_contour: empty foreground");
  }
  return best;
}

namespace detail {

inline double point_segment_perp_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len = ab.norm();
  if (len == 0) return distance(p, a);
  return std::abs(cross(ab, p - a)) / len;
}

inline void dp_simplify(const std::vector<Point2>& pts, std::size_t lo,
                        std::size_t hi, double eps,
                        std::vector<bool>& keep) {
  if (hi <= lo + 1) return;
  double dmax = 0;
  std::size_t split = lo;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const double d = point_segment_perp_distance(pts[i], pts[lo], pts[hi]);
    if (d > dmax) {
      dmax = d;
      split = i;
    }
  }
  if (dmax > eps) {
    keep[split] = true;
    dp_simplify(pts, lo, split, eps, keep);
    dp_simplify(pts, split, hi, eps, keep);
  }
}

}  // namespace detail

// Douglas-Peucker simplification. Closed contours are split at the point
// farthest from point 0, each half simplified, then rejoined.
inline Contour douglas_peucker(const Contour& c, double eps) {
  if (eps < 0) throw std::invalid_argument("douglas_peucker: eps must be >= 0");
  const std::vector<Point2>& pts = c.points;
  if (pts.size() <= 2) return c;

  Contour out;
  out.closed = c.closed;
  if (!c.closed) {
    std::vector<bool> keep(pts.size(), false);
    keep.front() = keep.back() = true;
    detail::dp_simplify(pts, 0, pts.size() - 1, eps, keep);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (keep[i]) out.points.push_back(pts[i]);
    }
    return out;
  }

  std::size_t far = 1;
  double dmax = -1;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = distance(pts[i], pts[0]);
    if (d > dmax) {
      dmax = d;
      far = i;
    }
  }
  std::vector<bool> keep(pts.size() + 1, false);
  keep[0] = keep[far] = true;
  std::vector<Point2> wrapped = pts;
  wrapped.push_back(pts[0]);  // close the loop for the second half
  detail::dp_simplify(wrapped, 0, far, eps, keep);
  detail::dp_simplify(wrapped, far, wrapped.size() - 1, eps, keep);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (keep[i]) out.points.push_back(pts[i]);
  }
  return out;
}

enum class RejectReason {
  none,
  empty,
  collinear,
  shared_coordinate,
  self_overlap,
};

inline const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::none: return "none";
    case RejectReason::empty: return "empty";
    case RejectReason::collinear: return "collinear";
    case RejectReason::shared_coordinate: return "shared-coordinate";
    case RejectReason::self_overlap: return "self-overlap";
  }
  return "?";
}

struct PipelineResult {
  SimplicialComplex2D complex;
  RejectReason reason = RejectReason::none;

  bool ok() const { return reason == RejectReason::none; }
};

// Full contour pipeline: threshold -> binarize -> longest contour ->
// Douglas-Peucker (eps = level * arc length) -> perturb coordinates from
// [-0.01, 0.01) -> clean. Binary inputs (two pixel values) threshold at the
// lower value; grayscale inputs use Otsu.
inline PipelineResult contour_pipeline(const GrayImage& img, double level,
                                       std::uint64_t seed) {
  PipelineResult result;

  std::vector<int> values = img.pixels;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() < 2) {
    result.reason = RejectReason::empty;
    return result;
  }
  const int threshold =
      values.size() == 2 ? values.front() : otsu_threshold(img);

  Contour contour;
  try {
    contour = extract_longest_contour(img, threshold);
  } catch (const std::invalid_argument&) {
    result.reason = RejectReason::empty;
    return result;
  }
  contour = douglas_peucker(contour, level * contour.arc_length());
  if (contour.points.size() < 3) {
    result.reason = RejectReason::empty;
    return result;
  }

  const std::vector<Point2> perturbed = perturb(contour.points, 0.01, seed);

  const GeneralPositionReport gp = general_position_check(perturbed);
  if (!gp.collinear_triples.empty()) {
    result.reason = RejectReason::collinear;
    return result;
  }
  if (!gp.shared_coordinate_pairs.empty()) {
    result.reason = RejectReason::shared_coordinate;
    return result;
  }

  SimplicialComplex2D k;
  k.vertices = perturbed;
  const int n = static_cast<int>(perturbed.size());
  for (int i = 0; i < n; ++i) k.add_edge(i, (i + 1) % n);
  const ValidationReport report = validate(k);
  if (!report.crossing_edges.empty() || !report.vertex_on_edge.empty()) {
    result.reason = RejectReason::self_overlap;
    return result;
  }
  result.complex = std::move(k);
  return result;
}

// k i.i.d. uniform points in the [0, 10]^2 box, deterministic per seed.
inline std::vector<Point2> random_cloud(int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("random_cloud: k must be >= 1");
  Rng rng(seed);
  std::vector<Point2> pts;
  pts.reserve(k);
  for (int i = 0; i < k; ++i) {
    pts.push_back({rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)});
  }
  return pts;
}

struct gsc_parse_error : std::runtime_error {
  int line;
  gsc_parse_error(const std::string& msg, int ln)
      : std::runtime_error("gsc line " + std::to_string(ln) + ": " + msg),
        line(ln) {}
};

// .gsc text format: header "gsc 2", then "v <x> <y>", "e <i> <j>",
// "t <i> <j> <k>" lines with 0-based indices; '#' starts a comment.
inline SimplicialComplex2D read_gsc(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  SimplicialComplex2D k;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!header_seen) {
      int dim = -1;
      if (tag != "gsc" || !(ls >> dim) || dim != 2) {
        throw gsc_parse_error("expected header 'gsc 2'", lineno);
      }
      header_seen = true;
      continue;
    }
    if (tag == "v") {
      double x, y;
      if (!(ls >> x >> y)) throw gsc_parse_error("bad vertex line", lineno);
      k.vertices.push_back({x, y});
    } else if (tag == "e") {
      int i, j;
      if (!(ls >> i >> j)) throw gsc_parse_error("bad edge line", lineno);
      if (i < 0 || j < 0 || i >= k.vertex_count() || j >= k.vertex_count() ||
          i == j) {
        throw gsc_parse_error("edge references unknown vertex", lineno);
      }
      k.add_edge(i, j);
    } else if (tag == "t") {
      int i, j, m;
      if (!(ls >> i >> j >> m)) {
        throw gsc_parse_error("bad triangle line", lineno);
      }
      if (i < 0 || j < 0 || m < 0 || i >= k.vertex_count() ||
          j >= k.vertex_count() || m >= k.vertex_count()) {
        throw gsc_parse_error("triangle references unknown vertex", lineno);
      }
      k.add_triangle(i, j, m);
    } else {
      throw gsc_parse_error("unknown record '" + tag + "'", lineno);
    }
  }
  if (!header_seen) throw gsc_parse_error("missing header", lineno);
  const ValidationReport report = validate(k);
  if (!report.face_closure.empty()) {
    throw gsc_parse_error("face closure violation: " + report.face_closure[0],
                          lineno);
  }
  if (!report.index_errors.empty()) {
    throw gsc_parse_error(report.index_errors[0], lineno);
  }
  return k;
}

inline std::string write_gsc(const SimplicialComplex2D& k) {
  std::string out = "gsc 2\n";
  char buf[96];
  for (const Point2& p : k.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g\n", p.x, p.y);
    out += buf;
  }
  for (const auto& e : k.edges) {
    std::snprintf(buf, sizeof(buf), "e %d %d\n", e[0], e[1]);
    out += buf;
  }
  for (const auto& t : k.triangles) {
    std::snprintf(buf, sizeof(buf), "t %d %d %d\n", t[0], t[1], t[2]);
    out += buf;
  }
  return out;
}

}  // namespace strataudit
