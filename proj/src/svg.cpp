#include "tlo/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tlo {

namespace {

using nlohmann::json;

constexpr double kSize = 420.0;
constexpr double kMargin = 60.0;
constexpr const char* kBlue = "#1f3fd1";
constexpr const char* kRed = "#d62020";

struct P {
  double x = 0.0, y = 0.0;
};

P read_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("report: expected a 2-element numeric array");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(fmt::format("report: missing \"{}\"", key));
  return j.at(key);
}

std::string num(double v) {
  if (std::abs(v) < 5e-4) v = 0.0; // keeps "-0.000" out of the output
  return fmt::format("{:.3f}", v);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

// Equal-aspect mapping of a data box onto the square plot area.
class Frame {
public:
  void include(P p) {
    lo_.x = std::min(lo_.x, p.x);
    lo_.y = std::min(lo_.y, p.y);
    hi_.x = std::max(hi_.x, p.x);
    hi_.y = std::max(hi_.y, p.y);
  }

  void finish() {
    double span = std::max(hi_.x - lo_.x, hi_.y - lo_.y);
    if (!(span > 1e-9)) span = 1.0;
    span *= 1.1;
    const P mid{0.5 * (lo_.x + hi_.x), 0.5 * (lo_.y + hi_.y)};
    lo_ = {mid.x - 0.5 * span, mid.y - 0.5 * span};
    hi_ = {mid.x + 0.5 * span, mid.y + 0.5 * span};
    scale_ = (kSize - 2.0 * kMargin) / span;
  }

  double sx(double x) const { return kMargin + (x - lo_.x) * scale_; }
  double sy(double y) const { return kSize - kMargin - (y - lo_.y) * scale_; }
  double len(double d) const { return d * scale_; }
  P lo() const { return lo_; }
  P hi() const { return hi_; }

private:
  P lo_{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  P hi_{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  double scale_ = 1.0;
};

std::string header(const std::string& title) {
  return fmt::format("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                     "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
                     "<title>{1}</title>\n"
                     "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n"
                     "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{1}</text>\n",
                     num(kSize), escape(title), num(kSize / 2));
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  const double x0 = kMargin, x1 = kSize - kMargin, y0 = kMargin, y1 = kSize - kMargin;
  std::string s = fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888888\"/>\n",
                              num(x0), num(y0), num(x1 - x0), num(y1 - y0));
  // Zero lines when the origin is in view.
  if (f.lo().x < 0.0 && f.hi().x > 0.0)
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#cccccc\"/>\n", num(f.sx(0.0)), num(y0),
                     num(y1));
  if (f.lo().y < 0.0 && f.hi().y > 0.0)
    s += fmt::format("<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#cccccc\"/>\n", num(f.sy(0.0)), num(x0),
                     num(x1));
  const auto tick = [](double v) { return fmt::format("{:.3g}", std::abs(v) < 1e-12 ? 0.0 : v); };
  s += fmt::format("<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n"
                   "<text x=\"{}\" y=\"{}\" text-anchor=\"start\">{}</text>\n"
                   "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n"
                   "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n"
                   "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n"
                   "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n"
                   "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 {} {})\">{}</text>\n"
                   "</g>\n",
                   num(x0), num(y1 + 16), tick(f.lo().x), num(x1), num(y1 + 16), tick(f.hi().x), num(x0 - 6),
                   num(y1), tick(f.lo().y), num(x0 - 6), num(y0 + 10), tick(f.hi().y), num(kSize / 2),
                   num(kSize - 18), escape(xlabel), num(22), num(kSize / 2), num(22), num(kSize / 2), escape(ylabel));
  return s;
}

// Ellipse as a single path of two half arcs so that exactly one blue path
// represents the target.
std::string ellipse_path(const Frame& f, P c, P r) {
  const double cx = f.sx(c.x), cy = f.sy(c.y), rx = f.len(r.x), ry = f.len(r.y);
  return fmt::format("<path class=\"target\" d=\"M {} {} A {} {} 0 1 0 {} {} A {} {} 0 1 0 {} {} Z\" fill=\"none\" "
                     "stroke=\"{}\" stroke-width=\"2\"/>\n",
                     num(cx + rx), num(cy), num(rx), num(ry), num(cx - rx), num(cy), num(rx), num(ry), num(cx + rx),
                     num(cy), kBlue);
}

std::string feasible_shape(const Frame& f, const std::vector<P>& verts, bool clipped) {
  if (verts.empty()) return {};
  const bool point = std::all_of(verts.begin(), verts.end(), [&](P p) {
    return std::hypot(p.x - verts[0].x, p.y - verts[0].y) <= 1e-12;
  });
  if (point)
    return fmt::format("<circle class=\"feasible\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\" stroke=\"{}\"/>\n",
                       num(f.sx(verts[0].x)), num(f.sy(verts[0].y)), kRed, kRed);
  std::string d = fmt::format("M {} {}", num(f.sx(verts[0].x)), num(f.sy(verts[0].y)));
  for (std::size_t i = 1; i < verts.size(); ++i) d += fmt::format(" L {} {}", num(f.sx(verts[i].x)), num(f.sy(verts[i].y)));
  if (verts.size() > 2) d += " Z";
  return fmt::format("<path class=\"feasible\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{}/>\n", d, kRed,
                     clipped ? " stroke-dasharray=\"6 3\"" : "");
}

std::string center_marker(const Frame& f, P c) {
  return fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"#000000\"/>\n", num(f.sx(c.x)), num(f.sy(c.y)));
}

std::string panel(const std::string& title, const std::string& xlabel, const std::string& ylabel, P center, P radii,
                  const json* polygon) {
  std::vector<P> verts;
  bool clipped = false;
  if (polygon) {
    for (const auto& v : field(*polygon, "vertices")) verts.push_back(read_point(v));
    clipped = field(*polygon, "clipped").get<bool>();
  }
  Frame f;
  f.include({center.x - radii.x, center.y - radii.y});
  f.include({center.x + radii.x, center.y + radii.y});
  for (P v : verts) f.include(v);
  f.finish();

  std::string s = header(title);
  s += axes(f, xlabel, ylabel);
  s += ellipse_path(f, center, radii);
  s += feasible_shape(f, verts, clipped);
  s += center_marker(f, center);
  s += "</svg>\n";
  return s;
}

std::string theta_label(const json& theta) {
  std::string s = "(";
  for (std::size_t i = 0; i < theta.size(); ++i) s += (i ? ", " : "") + fmt::format("{:g}", theta[i].get<double>());
  return s + ") deg";
}

std::string arrangement_svg(const json& report) {
  const json& states = field(report, "arrangement");
  const json& design = field(report, "design");
  Frame f;
  f.include({0.0, 0.0});
  for (const auto& st : states) {
    for (const auto& link : field(st, "links"))
      for (const auto& p : link) f.include(read_point(p));
    for (const auto& w : field(st, "wires"))
      for (const auto& p : w) f.include(read_point(p));
  }
  f.finish();

  std::string s = header("wire arrangement");
  s += axes(f, "x [m]", "y [m]");
  // First evaluated state solid, the rest faded.
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double opacity = k == 0 ? 1.0 : 0.3;
    s += fmt::format("<g class=\"state\" opacity=\"{}\">\n", num(opacity));
    for (const auto& link : states[k].at("links")) {
      const P a = read_point(link[0]), b = read_point(link[1]);
      s += fmt::format("<line class=\"link\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#444444\" "
                       "stroke-width=\"8\" stroke-linecap=\"round\"/>\n",
                       num(f.sx(a.x)), num(f.sy(a.y)), num(f.sx(b.x)), num(f.sy(b.y)));
    }
    for (const auto& link : states[k].at("links")) {
      const P a = read_point(link[0]);
      s += fmt::format("<circle class=\"joint\" cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"white\" stroke=\"#444444\"/>\n",
                       num(f.sx(a.x)), num(f.sy(a.y)));
    }
    for (const auto& wire : states[k].at("wires")) {
      std::string pts;
      for (const auto& p : wire) {
        const P q = read_point(p);
        pts += fmt::format("{}{},{}", pts.empty() ? "" : " ", num(f.sx(q.x)), num(f.sy(q.y)));
      }
      s += fmt::format("<polyline class=\"wire\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                       pts, kRed);
      for (const auto& p : wire) {
        const P q = read_point(p);
        s += fmt::format("<circle class=\"relay\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n", num(f.sx(q.x)),
                         num(f.sy(q.y)), kBlue);
      }
    }
    s += "</g>\n";
  }

  if (design.value("kind", "") == "constant") {
    // Constant designs have no relay geometry; list the moment arms instead.
    s += "<g class=\"arms\" font-family=\"monospace\" font-size=\"11\">\n";
    double y = kMargin + 16;
    s += fmt::format("<text x=\"{}\" y=\"{}\">moment arms [m]</text>\n", num(kMargin + 8), num(y));
    const json& arms = field(design, "arms");
    for (std::size_t m = 0; m < arms.size(); ++m) {
      y += 14;
      std::string row = fmt::format("w{}:", m + 1);
      for (const auto& a : arms[m]) row += fmt::format(" {:+.4f}", a.get<double>());
      s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num(kMargin + 8), num(y), row);
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

} // namespace

std::vector<SvgFile> render_report(const json& report) {
  std::vector<SvgFile> files;
  if (field(report, "feasible").get<bool>()) {
    const json& targets = field(report, "targets");
    const P force_radii = read_point(field(targets, "force_radii"));
    const P velocity_radii = read_point(field(targets, "velocity_radii"));
    const json& configs = field(report, "configurations");
    for (std::size_t k = 0; k < configs.size(); ++k) {
      const json& c = configs[k];
      const std::string theta = theta_label(field(c, "theta_deg"));
      const P center = read_point(field(c, "force_center"));
      const json* fp = c.contains("force_polygon") ? &c.at("force_polygon") : nullptr;
      const json* vp = c.contains("velocity_polygon") ? &c.at("velocity_polygon") : nullptr;
      files.push_back({fmt::format("force_q{}.svg", k + 1),
                       panel(fmt::format("force space, theta = {}", theta), "F_x [N]", "F_y [N]", center, force_radii, fp)});
      files.push_back({fmt::format("velocity_q{}.svg", k + 1),
                       panel(fmt::format("velocity space, theta = {}", theta), "v_x [m/s]", "v_y [m/s]", {0.0, 0.0},
                             velocity_radii, vp)});
    }
  }
  files.push_back({"arrangement.svg", arrangement_svg(report)});
  return files;
}

} // namespace tlo
