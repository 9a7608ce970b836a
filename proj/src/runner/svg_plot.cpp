#include "dkg/runner/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dkg/errors.hpp"

namespace dkg::runner {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Frame {
  double lx0, lx1, ly0, ly1;
  double px(double x) const {
    return kLeft + (std::log10(x) - lx0) / (lx1 - lx0) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (std::log10(y) - ly0) / (ly1 - ly0) * (kHeight - kTop - kBottom);
  }
};

}  // namespace

std::string loglog_svg(const std::string& title, const std::vector<PlotSeries>& series,
                       const std::vector<GuideLine>& guides) {
  double lx0 = std::numeric_limits<double>::infinity();
  double lx1 = -lx0;
  double ly0 = lx0;
  double ly1 = -lx0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      lx0 = std::min(lx0, std::log10(s.x[i]));
      lx1 = std::max(lx1, std::log10(s.x[i]));
      ly0 = std::min(ly0, std::log10(s.y[i]));
      ly1 = std::max(ly1, std::log10(s.y[i]));
    }
  }
  if (!std::isfinite(lx0)) {
    lx0 = 0.0;
    lx1 = 1.0;
    ly0 = 0.0;
    ly1 = 1.0;
  }
  lx0 = std::floor(lx0);
  lx1 = std::max(std::ceil(lx1), lx0 + 1.0);
  ly0 = std::floor(ly0);
  ly1 = std::max(std::ceil(ly1), ly0 + 1.0);
  const Frame f{lx0, lx1, ly0, ly1};

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"15\">"
     << escape(title) << "</text>\n";
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kTop;
  const double y1 = kHeight - kBottom;
  os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 << "\" height=\""
     << y1 - y0 << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = lx0; d <= lx1 + 1e-9; d += 1.0) {
    const double x = f.px(std::pow(10.0, d));
    os << "<line x1=\"" << x << "\" y1=\"" << y0 << "\" x2=\"" << x << "\" y2=\"" << y1
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << y1 + 18 << "\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"11\">1e"
       << d << "</text>\n";
  }
  const double ystep = std::max(1.0, std::ceil((ly1 - ly0) / 10.0));
  for (double d = ly0; d <= ly1 + 1e-9; d += ystep) {
    const double y = f.py(std::pow(10.0, d));
    os << "<line x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x1 << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x0 - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" "
          "font-family=\"sans-serif\" font-size=\"11\">1e"
       << d << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 16
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">t</text>\n";

  double legend_y = y0 + 10;
  auto legend = [&](const std::string& color, const std::string& label, bool dashed) {
    os << "<line x1=\"" << x1 + 10 << "\" y1=\"" << legend_y << "\" x2=\"" << x1 + 34 << "\" y2=\""
       << legend_y << "\" stroke=\"" << color << "\" stroke-width=\"2\""
       << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    os << "<text x=\"" << x1 + 40 << "\" y=\"" << legend_y + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(label) << "</text>\n";
    legend_y += 18;
  };

  os << "<g clip-path=\"none\">\n";
  std::size_t ci = 0;
  bool have_anchor = false;
  double ax = 0.0;
  double ay = 0.0;
  for (const auto& s : series) {
    const std::string color = kColors[ci++ % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      if (!have_anchor) {
        have_anchor = true;
        ax = s.x[i];
        ay = s.y[i];
      }
      os << f.px(s.x[i]) << ',' << f.py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    legend(color, s.label, false);
  }
  if (have_anchor) {
    for (const auto& g : guides) {
      const double xe = std::pow(10.0, lx1);
      const double ye = ay * std::pow(xe / ax, g.slope);
      const double ly = std::clamp(std::log10(ye), ly0, ly1);
      const double xc = ax * std::pow(std::pow(10.0, ly) / ay, 1.0 / (g.slope == 0.0 ? 1.0 : g.slope));
      const double xend = g.slope == 0.0 ? xe : std::min(xe, xc);
      os << "<line x1=\"" << f.px(ax) << "\" y1=\"" << f.py(ay) << "\" x2=\"" << f.px(xend)
         << "\" y2=\"" << f.py(ay * std::pow(xend / ax, g.slope))
         << "\" stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
      legend("#555", g.label, true);
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::vector<PlotSeries>& series,
                      const std::vector<GuideLine>& guides) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << loglog_svg(title, series, guides);
}

}  // namespace dkg::runner
