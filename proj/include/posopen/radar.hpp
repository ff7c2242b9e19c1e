/**
 * Copyright posopen contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POSOPEN_RADAR_HPP
#define POSOPEN_RADAR_HPP

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "posopen/scoring.hpp"

namespace posopen {

namespace detail {

inline std::string fixed2(double v) {
  // Avoid "-0.00"
  if (v > -0.005 && v < 0.005) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

/// Self-contained SVG radar chart: one pentagon ring per score level and
/// one polygon per chain, scores 1..5 mapped radially. Output bytes are a
/// pure function of the report.
inline std::string radar_svg(const OpennessReport& report) {
  constexpr double kWidth = 640.0, kHeight = 560.0;
  constexpr double kCx = 280.0, kCy = 290.0, kRadius = 200.0;
  constexpr double kPi = 3.14159265358979323846;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#bcbd22", "#17becf", "#aec7e8"};
  constexpr size_t kColorCount = sizeof(kColors) / sizeof(kColors[0]);

  auto axis_point = [&](unsigned axis, double r) {
    double angle = -kPi / 2 + 2 * kPi * axis / kAxisCount;
    return std::pair<double, double>(kCx + r * std::cos(angle),
                                     kCy + r * std::sin(angle));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)kWidth
      << "\" height=\"" << (int)kHeight << "\" viewBox=\"0 0 " << (int)kWidth
      << " " << (int)kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << (int)kCx
      << "\" y=\"36\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">Openness level radar chart</text>\n";

  // Concentric rings at scores 1..5.
  for (int level = 1; level <= 5; ++level) {
    double r = kRadius * level / 5.0;
    svg << "<polygon points=\"";
    for (unsigned a = 0; a < kAxisCount; ++a) {
      auto [x, y] = axis_point(a, r);
      if (a) svg << " ";
      svg << detail::fixed2(x) << "," << detail::fixed2(y);
    }
    svg << "\" fill=\"none\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }
  // Spokes and axis labels.
  for (unsigned a = 0; a < kAxisCount; ++a) {
    auto [x, y] = axis_point(a, kRadius);
    svg << "<line x1=\"" << detail::fixed2(kCx) << "\" y1=\""
        << detail::fixed2(kCy) << "\" x2=\"" << detail::fixed2(x)
        << "\" y2=\"" << detail::fixed2(y)
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    auto [lx, ly] = axis_point(a, kRadius + 24.0);
    svg << "<text x=\"" << detail::fixed2(lx) << "\" y=\""
        << detail::fixed2(ly + 4.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << axis_name(static_cast<Axis>(a)) << "</text>\n";
  }

  // One polygon per chain; missing axes plot at the center.
  for (size_t i = 0; i < report.chains.size(); ++i) {
    const char* color = kColors[i % kColorCount];
    svg << "<polygon points=\"";
    for (unsigned a = 0; a < kAxisCount; ++a) {
      double r = kRadius * report.radar[i][a] / 5.0;
      auto [x, y] = axis_point(a, r);
      if (a) svg << " ";
      svg << detail::fixed2(x) << "," << detail::fixed2(y);
    }
    svg << "\" fill=\"" << color << "\" fill-opacity=\"0.10\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
  }

  // Legend.
  double lx = 520.0, ly = 80.0;
  for (size_t i = 0; i < report.chains.size(); ++i) {
    const char* color = kColors[i % kColorCount];
    svg << "<rect x=\"" << detail::fixed2(lx) << "\" y=\""
        << detail::fixed2(ly + 20.0 * i) << "\" width=\"12\" height=\"12\" "
        << "fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << detail::fixed2(lx + 18.0) << "\" y=\""
        << detail::fixed2(ly + 20.0 * i + 11.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << report.chains[i].chain_id << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace posopen

#endif  // POSOPEN_RADAR_HPP
