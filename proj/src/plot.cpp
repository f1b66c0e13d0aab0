#include "sr/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sr::plot {

namespace {

constexpr double kW = 720, kH = 420, kL = 70, kR = 150, kT = 40, kB = 50;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void frame(std::ostringstream& o, const std::string& title, const std::string& xlabel, const std::string& ylabel,
           double x0, double x1, double y0, double y1) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
  o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\"" << kH - kT - kB
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fy = y0 + (y1 - y0) * k / 4.0;
    const double py = kH - kB - (kH - kT - kB) * k / 4.0;
    o << "<text x=\"" << kL - 6 << "\" y=\"" << fmt2(py + 4) << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
    if (!xlabel.empty()) {
      const double fx = x0 + (x1 - x0) * k / 4.0;
      const double px = kL + (kW - kL - kR) * k / 4.0;
      o << "<text x=\"" << fmt2(px) << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">" << num(fx)
        << "</text>\n";
    }
  }
  o << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">" << esc(xlabel)
    << "</text>\n";
  o << "<text transform=\"translate(16," << (kT + kH - kB) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << esc(ylabel) << "</text>\n";
}

}  // namespace

Series downsample(const std::string& name, const std::vector<double>& y, std::size_t max_points) {
  Series s{name, {}, {}};
  if (y.empty()) return s;
  const std::size_t bucket = std::max<std::size_t>(1, (y.size() + max_points - 1) / max_points);
  for (std::size_t i = 0; i < y.size(); i += bucket) {
    const std::size_t e = std::min(y.size(), i + bucket);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (std::size_t k = i; k < e; ++k)
      if (std::isfinite(y[k])) {
        acc += y[k];
        ++cnt;
      }
    if (!cnt) continue;
    s.x.push_back(0.5 * static_cast<double>(i + e - 1));
    s.y.push_back(acc / static_cast<double>(cnt));
  }
  return s;
}

std::string line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = 0.0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y1 = 1;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  std::ostringstream o;
  frame(o, title, xlabel, ylabel, x0, x1, y0, y1);
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = kColors[k % 8];
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      o << fmt2(kL + (s.x[i] - x0) / (x1 - x0) * pw) << ',' << fmt2(kH - kB - (s.y[i] - y0) / (y1 - y0) * ph) << ' ';
    o << "\"/>\n";
    const double ly = kT + 14 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kW - kR + 30 << "\" y2=\"" << ly - 4
      << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kW - kR + 36 << "\" y=\"" << ly << "\">" << esc(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string bar_chart(const std::string& title, const std::string& ylabel, const std::vector<std::string>& labels,
                      const std::vector<double>& values, const std::vector<double>& errors) {
  double y1 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::isfinite(values[i])) y1 = std::max(y1, values[i] + (i < errors.size() ? errors[i] : 0.0));
  if (y1 <= 0.0) y1 = 1.0;
  std::ostringstream o;
  frame(o, title, "", ylabel, 0, 1, 0, y1);
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  const double slot = pw / static_cast<double>(std::max<std::size_t>(1, values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    const double cx = kL + slot * (static_cast<double>(i) + 0.5);
    const double h = values[i] / y1 * ph;
    o << "<rect x=\"" << fmt2(cx - slot * 0.3) << "\" y=\"" << fmt2(kH - kB - h) << "\" width=\"" << fmt2(slot * 0.6)
      << "\" height=\"" << fmt2(h) << "\" fill=\"" << kColors[i % 8] << "\"/>\n";
    const double e = i < errors.size() && std::isfinite(errors[i]) ? errors[i] : 0.0;
    if (e > 0.0) {
      const double top = kH - kB - (values[i] + e) / y1 * ph;
      const double bot = kH - kB - std::max(0.0, values[i] - e) / y1 * ph;
      o << "<line x1=\"" << fmt2(cx) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(cx) << "\" y2=\"" << fmt2(bot)
        << "\" stroke=\"black\"/>\n";
    }
    o << "<text x=\"" << fmt2(cx) << "\" y=\"" << kH - kB + 16 << "\" text-anchor=\"middle\">"
      << esc(i < labels.size() ? labels[i] : "") << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace sr::plot
