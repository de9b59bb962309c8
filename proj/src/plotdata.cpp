#include "uasc/plotdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace uasc::harness {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;
};

void write_svg(const std::string& path, const std::vector<Series>& series,
               const std::string& xlabel) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Series& s : series)
    for (auto [x, y] : s.pts) {
      if (!(x > 0.0) || !(y > 0.0)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write svg: " + path);
  const int W = 760, H = 560, L = 70, R = 20, T = 20, B = 50;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
  if (xmin >= xmax || ymin >= ymax) {
    out << "</svg>\n";
    return;
  }
  const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
  const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
  auto px = [&](double x) {
    return L + (std::log10(x) - lx0) / (lx1 - lx0) * (W - L - R);
  };
  auto py = [&](double y) {
    return H - B - (std::log10(y) - ly0) / (ly1 - ly0) * (H - T - B);
  };
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R
      << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(lx0));
       d <= static_cast<int>(std::floor(lx1)); ++d) {
    const double x = px(std::pow(10.0, d));
    out << "<line x1=\"" << x << "\" y1=\"" << T << "\" x2=\"" << x
        << "\" y2=\"" << H - B << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << H - B + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0));
       d <= static_cast<int>(std::floor(ly1)); ++d) {
    const double y = py(std::pow(10.0, d));
    out << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R
        << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << L - 6 << "\" y=\"" << y + 4
        << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                                 "#17becf", "#bcbd22"};
  int ci = 0, ly = T + 14;
  for (const Series& s : series) {
    const char* col = colors[ci % 10];
    out << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
    for (auto [x, y] : s.pts)
      if (x > 0.0 && y > 0.0) out << px(x) << "," << py(y) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << L + 8 << "\" y=\"" << ly
        << "\" font-size=\"11\" fill=\"" << col << "\">" << s.label
        << "</text>\n";
    ly += 14;
    ++ci;
  }
  out << "</svg>\n";
}

}  // namespace

std::vector<ErrorRecord> parse_csv(const std::string& csv_text) {
  std::vector<ErrorRecord> records;
  std::istringstream in(csv_text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line + "\n" != csv_header())
        throw UsageError("unrecognized csv header");
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 9) throw UsageError("malformed csv row: " + line);
    ErrorRecord r;
    r.scheme = f[0];
    r.eps = std::strtod(f[1].c_str(), nullptr);
    r.tf = std::strtod(f[2].c_str(), nullptr);
    r.nx = static_cast<int>(std::strtol(f[3].c_str(), nullptr, 10));
    r.nt = std::strtol(f[4].c_str(), nullptr, 10);
    r.h = std::strtod(f[5].c_str(), nullptr);
    r.metric = f[6];
    r.value = std::strtod(f[7].c_str(), nullptr);
    r.status = f[8];
    records.push_back(r);
  }
  return records;
}

std::vector<std::string> emit_plotdata(const std::string& csv_text,
                                       const PlotOptions& opt) {
  if (opt.axes != "h" && opt.axes != "dx" && opt.axes != "eps")
    throw UsageError("unknown axes spec: " + opt.axes +
                     " (expected h, dx or eps)");
  const std::vector<ErrorRecord> records = parse_csv(csv_text);

  namespace fs = std::filesystem;
  fs::create_directories(opt.outdir);

  // group rows into curves; keys are built in first-seen order
  std::vector<std::string> keys;
  std::map<std::string, Series> curves;
  for (const ErrorRecord& r : records) {
    if (r.status != "ok" || !std::isfinite(r.value)) continue;
    if (r.metric.find(':') != std::string::npos) continue;
    double x = 0.0;
    std::string key, label;
    if (opt.axes == "h") {
      x = r.h;
      key = r.scheme + "_" + r.metric + "_eps" + fmt(r.eps);
      label = r.metric + " eps=" + fmt(r.eps);
    } else if (opt.axes == "dx") {
      x = kTwoPi / r.nx;
      key = r.scheme + "_" + r.metric + "_eps" + fmt(r.eps);
      label = r.metric + " eps=" + fmt(r.eps);
    } else {
      x = r.eps;
      key = r.scheme + "_" + r.metric + "_h" + fmt(r.h) + "_nx" +
            std::to_string(r.nx);
      label = r.metric + " h=" + fmt(r.h);
    }
    auto it = curves.find(key);
    if (it == curves.end()) {
      keys.push_back(key);
      it = curves.emplace(key, Series{label, {}}).first;
    }
    it->second.pts.emplace_back(x, r.value);
  }

  std::vector<std::string> written;
  std::ostringstream manifest;
  std::vector<Series> all_series;
  int idx = 0;
  for (const std::string& key : keys) {
    Series s = curves[key];
    std::stable_sort(s.pts.begin(), s.pts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    char fname[160];
    std::snprintf(fname, sizeof(fname), "series_%s_%03d.dat",
                  opt.axes.c_str(), idx++);
    const fs::path p = fs::path(opt.outdir) / fname;
    std::ofstream out(p);
    if (!out) throw UsageError("cannot write series file: " + p.string());
    out << "# x(" << opt.axes << ") value   [" << key << "]\n";
    for (auto [x, y] : s.pts) out << fmt(x) << " " << fmt(y) << "\n";
    manifest << fname << " " << key << " points=" << s.pts.size() << "\n";
    written.push_back(p.string());
    all_series.push_back(std::move(s));
  }

  const fs::path mp = fs::path(opt.outdir) / "manifest.txt";
  std::ofstream mout(mp);
  if (!mout) throw UsageError("cannot write manifest: " + mp.string());
  mout << manifest.str();
  written.insert(written.begin(), mp.string());

  if (!opt.svg_path.empty()) {
    write_svg(opt.svg_path, all_series, opt.axes);
    written.push_back(opt.svg_path);
  }
  return written;
}

}  // namespace uasc::harness
