// Copyright 2026 The dpconsensus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dpc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dpc {
namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string text(double x, double y, const std::string& s,
                 const char* anchor = "middle") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" +
         anchor + "\">" + escape(s) + "</text>\n";
}

std::string line(double x1, double y1, double x2, double y2,
                 const char* stroke = "#000") {
  return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
         "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\"/>\n";
}

std::string header(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n" +
         text(kWidth / 2, 22, title);
}

std::string axes() {
  const double x0 = kLeft, x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom, y1 = kTop;
  return line(x0, y0, x1, y0) + line(x0, y0, x0, y1);
}

std::string legend(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    const double y = kTop + 10 + 20.0 * s;
    const double x = kWidth - kRight + 15;
    out += line(x, y, x + 20, y, kColors[s % 4]);
    out += text(x + 26, y + 4, labels[s], "start");
  }
  return out;
}

}  // namespace

std::string line_plot_svg(const std::string& title,
                          const std::vector<Series>& series, bool log_y) {
  std::size_t steps = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Series& s : series) {
    steps = std::max(steps, s.y.size());
    for (double v : s.y) {
      if (!std::isfinite(v) || (log_y && v <= 0.0)) continue;
      const double t = log_y ? std::log10(v) : v;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  std::string out = header(title) + axes();
  if (!(hi >= lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (log_y) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  if (hi == lo) hi = lo + 1.0;
  const double kmax = steps > 1 ? static_cast<double>(steps - 1) : 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double k) { return kLeft + pw * k / kmax; };
  auto py = [&](double t) { return kHeight - kBottom - ph * (t - lo) / (hi - lo); };

  // Ticks: every decade on a log axis (thinned to at most 10), five on a
  // linear one.
  if (log_y) {
    const int span = static_cast<int>(hi - lo);
    const int stride = std::max(1, (span + 9) / 10);
    for (int d = static_cast<int>(lo); d <= static_cast<int>(hi); d += stride) {
      out += line(kLeft - 5, py(d), kLeft, py(d));
      out += text(kLeft - 8, py(d) + 4, "1e" + std::to_string(d), "end");
    }
  } else {
    for (int t = 0; t <= 4; ++t) {
      const double v = lo + (hi - lo) * t / 4.0;
      out += line(kLeft - 5, py(v), kLeft, py(v));
      out += text(kLeft - 8, py(v) + 4, num(v), "end");
    }
  }
  for (int t = 0; t <= 4; ++t) {
    const double k = kmax * t / 4.0;
    out += line(px(k), kHeight - kBottom, px(k), kHeight - kBottom + 5);
    out += text(px(k), kHeight - kBottom + 20, num(std::round(k)));
  }
  out += text(kLeft + pw / 2, kHeight - 10, "k");

  std::vector<std::string> labels;
  for (std::size_t s = 0; s < series.size(); ++s) {
    labels.push_back(series[s].label);
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out += "<polyline fill=\"none\" stroke=\"" + std::string(kColors[s % 4]) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
      }
      points.clear();
    };
    for (std::size_t k = 0; k < series[s].y.size(); ++k) {
      const double v = series[s].y[k];
      if (!std::isfinite(v) || (log_y && v <= 0.0)) {
        flush();
        continue;
      }
      const double t = log_y ? std::log10(v) : v;
      if (!points.empty()) points += ' ';
      points += num(px(static_cast<double>(k))) + ',' + num(py(t));
    }
    flush();
  }
  out += legend(labels);
  out += "</svg>\n";
  return out;
}

std::string histogram_svg(const std::string& title, const HistogramResult& h) {
  std::string out = header(title) + axes();
  const std::size_t bins = h.counts.size();
  int top = 1;
  for (std::size_t j = 0; j < bins; ++j) {
    top = std::max({top, h.counts[j], h.counts_adjacent[j]});
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double bw = bins > 0 ? pw / static_cast<double>(bins) : pw;
  for (std::size_t j = 0; j < bins; ++j) {
    const int counts[2] = {h.counts[j], h.counts_adjacent[j]};
    for (int s = 0; s < 2; ++s) {
      const double height = ph * counts[s] / top;
      const double x = kLeft + bw * static_cast<double>(j) + bw * 0.5 * s;
      out += "<rect x=\"" + num(x) + "\" y=\"" +
             num(kHeight - kBottom - height) + "\" width=\"" + num(bw * 0.5) +
             "\" height=\"" + num(height) + "\" fill=\"" + kColors[s] +
             "\" fill-opacity=\"0.8\"/>\n";
    }
  }
  for (int t = 0; t <= 4; ++t) {
    const double c = top * t / 4.0;
    const double y = kHeight - kBottom - ph * t / 4.0;
    out += line(kLeft - 5, y, kLeft, y);
    out += text(kLeft - 8, y + 4, num(c), "end");
  }
  if (bins > 0) {
    out += text(kLeft, kHeight - kBottom + 20, num(h.edges.front()));
    out += text(kLeft + pw, kHeight - kBottom + 20, num(h.edges.back()));
  }
  out += legend({"y", "y'"});
  out += "</svg>\n";
  return out;
}

}  // namespace dpc
