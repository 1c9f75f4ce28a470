#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace shearlab::cli {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

bool numeric(const Cell& c, double& out) {
  if (const auto* d = std::get_if<double>(&c)) {
    out = *d;
    return true;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    out = static_cast<double>(*i);
    return true;
  }
  return false;
}

std::size_t column_index(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  return static_cast<std::size_t>(it - t.columns.begin());
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

Check check_at_most(std::string name, double value, double tol) {
  return check_between(std::move(name), value, -std::numeric_limits<double>::infinity(), tol);
}

Check check_between(std::string name, double value, double lo, double hi) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.lo = lo;
  c.hi = hi;
  c.pass = value >= lo && value <= hi;
  return c;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string to_svg(const Table& table) {
  const PlotSpec& p = table.plot;
  if (!p.enabled || p.y.empty()) return {};
  const bool logx = p.scale == Scale::loglog;
  const bool logy = p.scale != Scale::linear;
  const std::size_t xi = column_index(table, p.x);
  if (xi >= table.columns.size()) return {};

  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& name : p.y) {
    const std::size_t yi = column_index(table, name);
    if (yi >= table.columns.size()) continue;
    Series s{name, {}};
    for (const auto& row : table.rows) {
      double x = 0.0;
      double y = 0.0;
      if (!numeric(row[xi], x) || !numeric(row[yi], y)) continue;
      if ((logx && !(x > 0.0)) || (logy && !(y > 0.0)) || !std::isfinite(x) || !std::isfinite(y)) {
        continue;
      }
      x = logx ? std::log10(x) : x;
      y = logy ? std::log10(y) : y;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
      s.pts.emplace_back(x, y);
    }
    series.push_back(std::move(s));
  }
  if (!(x1 >= x0) || !(y1 >= y0)) return {};
  if (x1 == x0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }

  const double w = 640.0;
  const double h = 420.0;
  const double left = 80.0;
  const double right = 160.0;
  const double top = 30.0;
  const double bottom = 50.0;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto sy = [&](double y) { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); };
  auto label = [](double v, bool log) { return log ? "1e" + short_number(v) : short_number(v); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left << "\" y=\"18\">" << table.name << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\""
     << h - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0;
    const double fy = y0 + (y1 - y0) * i / 4.0;
    os << "<text x=\"" << short_number(sx(fx)) << "\" y=\"" << h - bottom + 18
       << "\" text-anchor=\"middle\">" << label(fx, logx) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << short_number(sy(fy) + 4)
       << "\" text-anchor=\"end\">" << label(fy, logy) << "</text>\n";
  }
  os << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 8 << "\" text-anchor=\"middle\">"
     << p.x << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % (sizeof kColors / sizeof *kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].pts.size(); ++i) {
      os << (i ? " " : "") << short_number(sx(series[s].pts[i].first)) << ","
         << short_number(sy(series[s].pts[i].second));
    }
    os << "\"/>\n";
    for (const auto& pt : series[s].pts) {
      os << "<circle cx=\"" << short_number(sx(pt.first)) << "\" cy=\"" << short_number(sy(pt.second))
         << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 16.0 * static_cast<double>(s);
    os << "<line x1=\"" << w - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << w - right + 30
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << w - right + 35 << "\" y=\"" << ly + 4 << "\">" << series[s].name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace shearlab::cli
