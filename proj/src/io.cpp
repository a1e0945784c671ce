#include "thermowit/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace thermowit::io {

namespace {

constexpr double kWidth = 520, kHeight = 440;
constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 60;

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string region_csv(const RegionGrid& grid) {
  std::string out = "kT_over_J,B_over_J,W,entangled\n";
  for (const auto& c : grid.cells) {
    out += format_number(c.kt) + "," + format_number(c.b) + "," + format_number(c.w) + "," +
           (c.entangled ? "1" : "0") + "\n";
  }
  return out;
}

nlohmann::json region_json(const RegionGrid& grid, const nlohmann::json& metadata) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : grid.cells) {
    nlohmann::json cell = {{"kT_over_J", c.kt}, {"B_over_J", c.b}, {"W", number_or_null(c.w)}, {"entangled", c.entangled}};
    if (!c.error.empty()) cell["error"] = c.error;
    cells.push_back(std::move(cell));
  }
  return {{"metadata", metadata},
          {"axes", {{"kT_over_J", grid.kt_axis}, {"B_over_J", grid.b_axis}}},
          {"order", "row-major in B then kT"},
          {"cells", std::move(cells)}};
}

std::string boundary_csv(const BoundaryCurve& curve, const BoundaryEndpoints& endpoints) {
  std::string out;
  out += "# zero_field_kTc_over_J=" + format_number(endpoints.zero_field_kt_c) + "\n";
  out += "# zero_temperature_Bc_over_J=" + format_number(endpoints.zero_temperature_b_c) + "\n";
  out += "# tolerance=" + format_number(curve.tolerance) + "\n";
  out += "B_over_J,kTc_over_J\n";
  for (const auto& p : curve.points) out += format_number(p.b) + "," + (p.kt_c ? format_number(*p.kt_c) : "no-crossing") + "\n";
  return out;
}

nlohmann::json boundary_json(const BoundaryCurve& curve, const BoundaryEndpoints& endpoints,
                             const nlohmann::json& metadata) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points) {
    nlohmann::json row = {{"B_over_J", p.b}};
    if (p.kt_c) {
      row["kTc_over_J"] = *p.kt_c;
      row["residual"] = p.residual;
    } else {
      row["kTc_over_J"] = nullptr;
      row["status"] = "no-crossing";
    }
    points.push_back(std::move(row));
  }
  return {{"metadata", metadata},
          {"endpoints",
           {{"zero_field_kTc_over_J", endpoints.zero_field_kt_c},
            {"zero_temperature_Bc_over_J", endpoints.zero_temperature_b_c}}},
          {"tolerance", curve.tolerance},
          {"points", std::move(points)}};
}

std::string witness_csv(const WitnessReport& r) {
  std::string out = "source,W,threshold,entangled,U,M,B,J,N\n";
  out += std::string(to_string(r.source)) + "," + format_number(r.value) + "," + format_number(r.threshold) + "," +
         (r.entangled ? "1" : "0") + "," + format_number(r.inputs.energy) + "," +
         format_number(r.inputs.magnetization) + "," + format_number(r.inputs.field) + "," +
         format_number(r.inputs.coupling) + "," +
         (r.inputs.n_sites ? std::to_string(*r.inputs.n_sites) : std::string("thermodynamic-limit")) + "\n";
  return out;
}

nlohmann::json witness_json(const WitnessReport& r) {
  nlohmann::json inputs = {{"U", r.inputs.energy}, {"M", r.inputs.magnetization}, {"B", r.inputs.field},
                           {"J", r.inputs.coupling}};
  if (r.inputs.n_sites) {
    inputs["N"] = *r.inputs.n_sites;
  } else {
    inputs["N"] = "thermodynamic-limit";
    inputs["per_site"] = true;
  }
  return {{"W", r.value},
          {"threshold", r.threshold},
          {"entangled", r.entangled},
          {"verdict", r.entangled ? "entangled" : "not detected"},
          {"source", to_string(r.source)},
          {"inputs", inputs}};
}

std::string region_svg(const RegionPolygon& polygon, const RegionAxes& axes) {
  Frame fr{axes.kt.min, axes.kt.max, axes.b.min, axes.b.max};
  if (fr.x1 <= fr.x0) fr.x1 = fr.x0 + 1.0;
  if (fr.y1 <= fr.y0) fr.y1 = fr.y0 + 1.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  if (polygon.vertices.size() >= 3) {
    s << "<polygon class=\"entangled-region\" fill=\"#9ecae1\" stroke=\"none\" points=\"";
    for (const auto& [x, y] : polygon.vertices) s << fixed(fr.px(x), 2) << "," << fixed(fr.py(y), 2) << " ";
    s << "\" data-points=\"";
    for (size_t i = 0; i < polygon.vertices.size(); ++i)
      s << (i ? " " : "") << format_number(polygon.vertices[i].first) << "," << format_number(polygon.vertices[i].second);
    s << "\"/>\n";
  }
  if (polygon.contour.size() >= 2) {
    s << "<polyline class=\"w1-contour\" fill=\"none\" stroke=\"#08306b\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : polygon.contour) s << fixed(fr.px(x), 2) << "," << fixed(fr.py(y), 2) << " ";
    s << "\"/>\n";
  }

  const double left = kLeft, right = kWidth - kRight, top = kTop, bottom = kHeight - kBottom;
  s << "<rect class=\"frame\" x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\""
    << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double xv = fr.x0 + (fr.x1 - fr.x0) * t / 5.0;
    const double yv = fr.y0 + (fr.y1 - fr.y0) * t / 5.0;
    const double px = fr.px(xv), py = fr.py(yv);
    s << "<line x1=\"" << fixed(px, 2) << "\" y1=\"" << bottom << "\" x2=\"" << fixed(px, 2) << "\" y2=\"" << bottom + 5
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fixed(px, 2) << "\" y=\"" << bottom + 20 << "\" font-size=\"12\" text-anchor=\"middle\">"
      << fixed(xv, 2) << "</text>\n";
    s << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(py, 2) << "\" x2=\"" << left << "\" y2=\"" << fixed(py, 2)
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << left - 8 << "\" y=\"" << fixed(py + 4, 2) << "\" font-size=\"12\" text-anchor=\"end\">"
      << fixed(yv, 2) << "</text>\n";
  }
  s << "<text class=\"axis-label\" x=\"" << (left + right) / 2 << "\" y=\"" << kHeight - 15
    << "\" font-size=\"14\" text-anchor=\"middle\">kT/|J|</text>\n";
  s << "<text class=\"axis-label\" x=\"20\" y=\"" << (top + bottom) / 2 << "\" font-size=\"14\" text-anchor=\"middle\""
    << " transform=\"rotate(-90 20 " << (top + bottom) / 2 << ")\">B/|J|</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::vector<std::vector<std::pair<double, double>>> parse_region_polygons(std::string_view svg) {
  std::vector<std::vector<std::pair<double, double>>> out;
  size_t pos = 0;
  const std::string_view tag = "<polygon class=\"entangled-region\"";
  while ((pos = svg.find(tag, pos)) != std::string_view::npos) {
    const auto end = svg.find("/>", pos);
    const auto attr = svg.find("data-points=\"", pos);
    if (attr == std::string_view::npos || attr > end) throw std::runtime_error("region polygon lacks data-points");
    const auto begin = attr + 13;
    const auto close = svg.find('"', begin);
    std::istringstream pts(std::string(svg.substr(begin, close - begin)));
    std::vector<std::pair<double, double>> poly;
    std::string pair;
    while (pts >> pair) {
      const auto comma = pair.find(',');
      poly.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
    }
    out.push_back(std::move(poly));
    pos = end;
  }
  return out;
}

}  // namespace thermowit::io
