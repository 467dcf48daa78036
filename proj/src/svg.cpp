#include "netclass/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <vector>

namespace netclass {

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 60, kLegend = 150;
constexpr std::array<const char*, 8> kPalette = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                                 "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string scatter_svg(std::span<const ScatterPoint> points, const std::string& title, const std::string& x_label,
                        const std::string& y_label, bool connect) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!points.empty()) {
    x0 = x1 = points[0].x;
    y0 = y1 = points[0].y;
    for (const auto& p : points) {
      x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
  }
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double plot_w = kWidth - 2 * kMargin - kLegend, plot_h = kHeight - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) { return kHeight - kMargin - (y - y0) / (y1 - y0) * plot_h; };

  // Groups in order of first appearance.
  std::vector<std::string> groups;
  for (const auto& p : points)
    if (std::find(groups.begin(), groups.end(), p.group) == groups.end()) groups.push_back(p.group);
  std::map<std::string, const char*> color;
  for (std::size_t i = 0; i < groups.size(); ++i) color[groups[i]] = kPalette[i % kPalette.size()];

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
       "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kMargin + plot_w / 2) + "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">" +
       escape(title) + "</text>\n";
  s += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin) + "\" width=\"" + fmt(plot_w) + "\" height=\"" +
       fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + fmt(kMargin + plot_w / 2) + "\" y=\"" + fmt(kHeight - 20) +
       "\" text-anchor=\"middle\" font-size=\"12\">" + escape(x_label) + "</text>\n";
  s += "<text x=\"20\" y=\"" + fmt(kMargin + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 20 " +
       fmt(kMargin + plot_h / 2) + ")\">" + escape(y_label) + "</text>\n";
  s += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kHeight - kMargin + 15) + "\" font-size=\"10\">" + fmt(x0) +
       "</text>\n";
  s += "<text x=\"" + fmt(kMargin + plot_w) + "\" y=\"" + fmt(kHeight - kMargin + 15) +
       "\" text-anchor=\"end\" font-size=\"10\">" + fmt(x1) + "</text>\n";
  s += "<text x=\"" + fmt(kMargin - 5) + "\" y=\"" + fmt(kHeight - kMargin) + "\" text-anchor=\"end\" font-size=\"10\">" +
       fmt(y0) + "</text>\n";
  s += "<text x=\"" + fmt(kMargin - 5) + "\" y=\"" + fmt(kMargin + 10) + "\" text-anchor=\"end\" font-size=\"10\">" +
       fmt(y1) + "</text>\n";

  if (connect) {
    for (const auto& g : groups) {
      std::string pts;
      for (const auto& p : points)
        if (p.group == g) pts += fmt(sx(p.x)) + "," + fmt(sy(p.y)) + " ";
      if (!pts.empty()) pts.pop_back();
      s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color[g] + "\" stroke-width=\"1.5\"/>\n";
    }
  }
  for (const auto& p : points)
    s += "<circle cx=\"" + fmt(sx(p.x)) + "\" cy=\"" + fmt(sy(p.y)) + "\" r=\"" + (connect ? "2" : "4") +
         "\" fill=\"" + color[p.group] + "\" fill-opacity=\"0.8\"/>\n";

  const double lx = kWidth - kLegend - kMargin / 2 + 20;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double ly = kMargin + 10 + 20 * static_cast<double>(i);
    s += "<circle cx=\"" + fmt(lx) + "\" cy=\"" + fmt(ly - 4) + "\" r=\"5\" fill=\"" + color[groups[i]] + "\"/>\n";
    s += "<text x=\"" + fmt(lx + 10) + "\" y=\"" + fmt(ly) + "\" font-size=\"12\">" + escape(groups[i]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string state_space_svg(const StateSpace& space, const Eigen::MatrixXd& coordinates) {
  std::vector<ScatterPoint> points;
  for (Eigen::Index i = 0; i < coordinates.rows(); ++i) {
    const auto& label = space.labels[static_cast<std::size_t>(i)];
    points.push_back({coordinates(i, 0), coordinates.cols() > 1 ? coordinates(i, 1) : 0.0,
                      label ? std::string(to_string(label->kind)) : std::string("unlabeled")});
  }
  return scatter_svg(points, "Network state space", "MDS 1", "MDS 2");
}

std::string roc_svg(const RocResult& result) {
  std::vector<ScatterPoint> points;
  for (const auto& curve : result.curves) {
    char auc[32];
    std::snprintf(auc, sizeof auc, "%.3f", curve.auc);
    const std::string group = std::string(to_string(curve.kind)) + " AUC " + auc;
    for (const auto& p : curve.points) points.push_back({p.fpr, p.tpr, group});
  }
  return scatter_svg(points, "ROC", "false positive rate", "true positive rate", true);
}

}  // namespace netclass
