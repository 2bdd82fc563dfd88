#include "orbitforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace orbitforge {

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) v = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct Palette {
  const char* point = "#1f6fb2";
  const char* arrow = "#444444";
  const char* implied = "#b24a1f";
  const char* inset = "#2a8f5a";
  const char* bar = "#8663c4";
};

Palette palette_for(const PlotStyle& style) {
  Palette p;
  if (style.palette == "mono") {
    p = {"#222222", "#555555", "#888888", "#222222", "#555555"};
  }
  return p;
}

struct Mapper {
  double xmin, xmax, ymin, ymax;
  double px0, px1, py0, py1;

  double x(double v) const {
    return px0 + (v - xmin) / (xmax - xmin) * (px1 - px0);
  }
  double y(double v) const {  // SVG y grows downward
    return py1 - (v - ymin) / (ymax - ymin) * (py1 - py0);
  }
};

}  // namespace

std::string plot_orbit(const OrbitSequence& seq, const PlotStyle& style,
                       const std::string& verdict) {
  const Palette pal = palette_for(style);
  const std::size_t len = seq.size();

  std::vector<double> xs(len), ys(len);
  for (std::size_t i = 0; i < len; ++i) {
    xs[i] = seq.at(i).re().to_double();
    ys[i] = seq.at(i).im().to_double();
  }
  double xmin = *std::min_element(xs.begin(), xs.end());
  double xmax = *std::max_element(xs.begin(), xs.end());
  double ymin = *std::min_element(ys.begin(), ys.end());
  double ymax = *std::max_element(ys.begin(), ys.end());
  double pad = std::max({(xmax - xmin) * 0.1, (ymax - ymin) * 0.1, 1e-3});
  Mapper m{xmin - pad, xmax + pad, ymin - pad, ymax + pad, 50, 510, 40, 500};

  // Distinct glyph classes under the precision-derived tolerance, each
  // labelled with every index it carries.
  ToleranceConfig tol = ToleranceConfig::for_precision(seq.precision_bits);
  std::vector<std::size_t> owner(len);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < len; ++i) {
    bool found = false;
    for (std::size_t c = 0; c < classes.size() && !found; ++c) {
      if (distance(seq.at(classes[c][0]), seq.at(i)) <= tol.eq_tol) {
        classes[c].push_back(i);
        owner[i] = c;
        found = true;
      }
    }
    if (!found) {
      owner[i] = classes.size();
      classes.push_back({i});
    }
  }

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"560\" "
         "viewBox=\"0 0 880 560\">\n";
  svg += "<defs><marker id=\"tip\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" "
         "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"";
  svg += pal.arrow;
  svg += "\"/></marker></defs>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"880\" height=\"560\" fill=\"#ffffff\"/>\n";

  auto arrow = [&](std::size_t a, std::size_t b, bool implied) {
    svg += "<line class=\"arrow\" x1=\"" + fmt(m.x(xs[a])) + "\" y1=\"" +
           fmt(m.y(ys[a])) + "\" x2=\"" + fmt(m.x(xs[b])) + "\" y2=\"" +
           fmt(m.y(ys[b])) + "\" stroke=\"" +
           (implied ? pal.implied : pal.arrow) + "\"" +
           (implied ? " stroke-dasharray=\"4 3\"" : "") +
           " marker-end=\"url(#tip)\"/>\n";
  };
  for (std::size_t i = 0; i + 1 < len; ++i) arrow(i, i + 1, false);

  // If the last point repeats an earlier one, candidacy forces its
  // successor; close the loop with a dashed arrow.
  for (std::size_t p = 0; p + 1 < len; ++p) {
    if (distance(seq.at(p), seq.at(len - 1)) <= tol.eq_tol) {
      arrow(len - 1, p + 1, true);
      break;
    }
  }

  for (const auto& cls : classes) {
    double cx = m.x(xs[cls[0]]);
    double cy = m.y(ys[cls[0]]);
    svg += "<circle class=\"pt\" cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) +
           "\" r=\"4\" fill=\"" + pal.point + "\"/>\n";
    std::string label;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) label += ",";
      label += std::to_string(cls[i]);
    }
    svg += "<text x=\"" + fmt(cx + 6) + "\" y=\"" + fmt(cy - 6) +
           "\" font-size=\"11\">" + label + "</text>\n";
  }

  // Log-scale modulus inset.
  svg += "<rect x=\"560\" y=\"60\" width=\"280\" height=\"300\" fill=\"none\" "
         "stroke=\"#999999\"/>\n";
  std::vector<double> logmod(len);
  double lmin = 0, lmax = 0;
  for (std::size_t i = 0; i < len; ++i) {
    BigFloat mod = seq.modulus(i);
    logmod[i] = mod.is_zero() ? 0.0 : log(mod).to_double() / std::log(10.0);
    if (i == 0 || logmod[i] < lmin) lmin = logmod[i];
    if (i == 0 || logmod[i] > lmax) lmax = logmod[i];
  }
  if (lmax - lmin < 1e-9) lmax = lmin + 1;
  Mapper im{0, static_cast<double>(len - 1), lmin, lmax, 570, 830, 70, 350};
  std::string pts;
  for (std::size_t i = 0; i < len; ++i) {
    if (i) pts += " ";
    pts += fmt(im.x(static_cast<double>(i))) + "," + fmt(im.y(logmod[i]));
  }
  svg += "<polyline class=\"inset\" points=\"" + pts + "\" fill=\"none\" stroke=\"" +
         std::string(pal.inset) + "\"/>\n";
  svg += "<text x=\"560\" y=\"50\" font-size=\"12\">log10 |z_n|</text>\n";

  svg += "<text class=\"verdict\" x=\"50\" y=\"540\" font-size=\"14\">verdict: " +
         verdict + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::string plot_qc(const PiecewiseQCMap& map, const PlotStyle& style,
                    const std::string& verdict) {
  const Palette pal = palette_for(style);
  const OrbitSequence& seq = map.sequence();
  const std::size_t len = seq.size();

  // Log-radial layout: circle |z_n| drawn with pixel radius shrinking
  // linearly in log-modulus.
  std::vector<double> logmod(len);
  for (std::size_t i = 0; i < len; ++i)
    logmod[i] = log(seq.modulus(i)).to_double();
  double lmax = logmod[0], lmin = logmod[len - 1];
  if (lmax - lmin < 1e-9) lmax = lmin + 1;
  auto radial = [&](double lm) {
    return 30.0 + (lm - lmin) / (lmax - lmin) * 200.0;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"560\" "
         "viewBox=\"0 0 880 560\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"880\" height=\"560\" fill=\"#ffffff\"/>\n";
  const double cx = 280, cy = 280;

  for (std::size_t i = 0; i < len; ++i) {
    svg += "<circle class=\"src\" cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) +
           "\" r=\"" + fmt(radial(logmod[i])) + "\" fill=\"none\" stroke=\"" +
           pal.point + "\"/>\n";
    if (i >= 1) {
      svg += "<circle class=\"img\" cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) +
             "\" r=\"" + fmt(radial(logmod[i])) +
             "\" fill=\"none\" stroke=\"" + pal.inset +
             "\" stroke-dasharray=\"2 3\"/>\n";
    }
  }

  // Sampled correspondences z -> f(z) on each annulus midline.
  const double angles[] = {0.4, 2.1, 3.9, 5.5};
  for (const auto& a : map.annuli()) {
    double rin = radial(logmod[a.n] - 0.5 * a.d.to_double());
    for (double th : angles) {
      double x0 = cx + rin * std::cos(th);
      double y0 = cy + rin * std::sin(th);
      BigComplex z =
          exp(BigComplex(BigFloat(logmod[a.n] - 0.5 * a.d.to_double(),
                                  map.precision()),
                         BigFloat(th, map.precision())));
      BigComplex w = map.evaluate(z);
      double rw = radial(log(w.abs()).to_double());
      double tw = w.arg().to_double();
      double x1 = cx + rw * std::cos(tw);
      double y1 = cy + rw * std::sin(tw);
      svg += "<line class=\"corr\" x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) +
             "\" x2=\"" + fmt(x1) + "\" y2=\"" + fmt(y1) + "\" stroke=\"" +
             pal.arrow + "\" stroke-width=\"0.6\"/>\n";
    }
  }

  // Distortion bar chart.
  double kmax = 1.0;
  for (const auto& a : map.annuli()) kmax = std::max(kmax, a.K.to_double());
  const double bx = 580, bw = 260, bh = 320, by = 420;
  svg += "<rect x=\"" + fmt(bx) + "\" y=\"" + fmt(by - bh) + "\" width=\"" +
         fmt(bw) + "\" height=\"" + fmt(bh) +
         "\" fill=\"none\" stroke=\"#999999\"/>\n";
  const double slot = bw / static_cast<double>(map.annuli().size());
  for (const auto& a : map.annuli()) {
    double h = a.K.to_double() / kmax * (bh - 20);
    svg += "<rect class=\"kbar\" x=\"" +
           fmt(bx + slot * static_cast<double>(a.n) + 2) + "\" y=\"" +
           fmt(by - h) + "\" width=\"" + fmt(slot - 4) + "\" height=\"" +
           fmt(h) + "\" fill=\"" + pal.bar + "\"/>\n";
  }
  svg += "<text x=\"" + fmt(bx) + "\" y=\"" + fmt(by - bh - 10) +
         "\" font-size=\"12\">K per annulus (max " + fmt(kmax) + ")</text>\n";

  svg += "<text class=\"verdict\" x=\"50\" y=\"540\" font-size=\"14\">verdict: " +
         verdict + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace orbitforge
