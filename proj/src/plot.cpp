#include "rslab/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rslab {

namespace {

constexpr int kPanelWidth = 560;
constexpr int kPanelHeight = 340;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 56;
constexpr int kLegendHeight = 28;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};

std::string fmt(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string fmt_data(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

void write_pcs_svg(const std::vector<PcsCurvePoint>& points,
                   const std::string& path) {
  if (points.empty()) throw std::invalid_argument("no rows");

  // Group by instance, preserving first-appearance order; policies likewise.
  std::vector<std::string> instance_order;
  std::vector<std::string> policy_order;
  for (const PcsCurvePoint& point : points) {
    if (std::find(instance_order.begin(), instance_order.end(),
                  point.instance_id) == instance_order.end()) {
      instance_order.push_back(point.instance_id);
    }
    if (std::find(policy_order.begin(), policy_order.end(), point.policy_id) ==
        policy_order.end()) {
      policy_order.push_back(point.policy_id);
    }
  }

  std::int64_t t_min = points.front().budget;
  std::int64_t t_max = points.front().budget;
  for (const PcsCurvePoint& point : points) {
    t_min = std::min(t_min, point.budget);
    t_max = std::max(t_max, point.budget);
  }
  if (t_max == t_min) t_max = t_min + 1;

  const int columns = instance_order.size() > 1 ? 2 : 1;
  const int rows =
      static_cast<int>((instance_order.size() + columns - 1) / columns);
  const int total_width = columns * kPanelWidth;
  const int total_height = rows * kPanelHeight + kLegendHeight;

  const auto x_of = [&](std::int64_t t, int panel_x) {
    const double span = static_cast<double>(t_max - t_min);
    return panel_x + kMarginLeft +
           (kPanelWidth - kMarginLeft - kMarginRight) *
               (static_cast<double>(t - t_min) / span);
  };
  const auto y_of = [&](double pcs, int panel_y) {
    const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
    return panel_y + kMarginTop + plot_h * (1.0 - pcs);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_width
      << "\" height=\"" << total_height << "\" viewBox=\"0 0 " << total_width
      << " " << total_height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t panel = 0; panel < instance_order.size(); ++panel) {
    const std::string& instance_id = instance_order[panel];
    const int px = static_cast<int>(panel % columns) * kPanelWidth;
    const int py = static_cast<int>(panel / columns) * kPanelHeight;
    const double left = px + kMarginLeft;
    const double right = px + kPanelWidth - kMarginRight;
    const double top = py + kMarginTop;
    const double bottom = py + kPanelHeight - kMarginBottom;

    out << "<g class=\"panel\" data-instance=\"" << instance_id << "\">\n";
    out << "<text x=\"" << fmt(0.5 * (left + right)) << "\" y=\"" << py + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << instance_id << "</text>\n";

    // Axes with PCS gridlines every 0.2 and five budget ticks.
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\""
        << fmt(right) << "\" y2=\"" << fmt(bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\""
        << fmt(left) << "\" y2=\"" << fmt(bottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 5; ++i) {
      const double pcs = 0.2 * i;
      const double y = y_of(pcs, py);
      out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\""
          << fmt(right) << "\" y2=\"" << fmt(y)
          << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
      out << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
          << fmt(pcs) << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
      const auto t = static_cast<std::int64_t>(
          t_min + (t_max - t_min) * static_cast<double>(i) / 4.0);
      const double x = x_of(t, px);
      out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(bottom + 18)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << t << "</text>\n";
    }
    out << "<text x=\"" << fmt(0.5 * (left + right)) << "\" y=\""
        << fmt(bottom + 38)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "T</text>\n";

    for (std::size_t pi = 0; pi < policy_order.size(); ++pi) {
      const std::string& policy = policy_order[pi];
      const char* color = kPalette[pi % std::size(kPalette)];

      std::vector<const PcsCurvePoint*> series;
      for (const PcsCurvePoint& point : points) {
        if (point.instance_id == instance_id && point.policy_id == policy) {
          series.push_back(&point);
        }
      }
      if (series.empty()) continue;
      std::sort(series.begin(), series.end(),
                [](const PcsCurvePoint* a, const PcsCurvePoint* b) {
                  return a->budget < b->budget;
                });

      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" data-policy=\"" << policy << "\" points=\"";
      for (const PcsCurvePoint* point : series) {
        out << fmt(x_of(point->budget, px)) << ","
            << fmt(y_of(point->pcs_hat, py)) << " ";
      }
      out << "\"/>\n";

      for (const PcsCurvePoint* point : series) {
        const double x = x_of(point->budget, px);
        const double y = y_of(point->pcs_hat, py);
        const double y_lo = y_of(point->pcs_hat - point->std_err, py);
        const double y_hi = y_of(point->pcs_hat + point->std_err, py);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y_lo) << "\" x2=\""
            << fmt(x) << "\" y2=\"" << fmt(y_hi) << "\" stroke=\"" << color
            << "\" stroke-width=\"1\"/>\n";
        out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
            << "\" r=\"2.5\" fill=\"" << color << "\" data-instance=\""
            << point->instance_id << "\" data-policy=\"" << point->policy_id
            << "\" data-t=\"" << point->budget << "\" data-pcs=\""
            << fmt_data(point->pcs_hat) << "\" data-se=\""
            << fmt_data(point->std_err) << "\"/>\n";
      }
    }
    out << "</g>\n";
  }

  // Legend strip along the bottom.
  const int legend_y = rows * kPanelHeight + kLegendHeight / 2;
  double legend_x = 24.0;
  for (std::size_t pi = 0; pi < policy_order.size(); ++pi) {
    const char* color = kPalette[pi % std::size(kPalette)];
    out << "<line x1=\"" << fmt(legend_x) << "\" y1=\"" << legend_y
        << "\" x2=\"" << fmt(legend_x + 26) << "\" y2=\"" << legend_y
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(legend_x + 32) << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << policy_order[pi]
        << "</text>\n";
    legend_x += 40.0 + 8.0 * policy_order[pi].size();
  }

  out << "</svg>\n";
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace rslab
