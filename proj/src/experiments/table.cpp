#include "fuzzynv/experiments/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "fuzzynv/error.hpp"

namespace fuzzynv::experiments {

std::size_t Table::column(const std::string& c) const {
  const auto it = std::find(columns.begin(), columns.end(), c);
  if (it == columns.end()) throw InvalidArgument("table " + name + " has no column " + c);
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
  };
  return std::visit(Visitor{}, c);
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::optional<double> numeric(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? std::optional(*d) : std::nullopt;
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::nullopt;
}

constexpr const char* kPalette[] = {"#1b6ca8", "#d1495b", "#edae49", "#00798c", "#66a182",
                                    "#8d6a9f", "#2e4057", "#c8553d", "#588b8b", "#b0a990"};

}  // namespace

std::string to_svg(const Table& t, const std::string& y_column) {
  const std::size_t xi = t.column(t.plot.x);
  const std::size_t yi = t.column(y_column);
  std::vector<std::size_t> si;
  for (const auto& s : t.plot.series) si.push_back(t.column(s));

  std::map<std::string, std::vector<std::pair<double, double>>> lines;
  std::vector<std::string> order;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& row : t.rows) {
    const auto x = numeric(row[xi]);
    const auto y = numeric(row[yi]);
    if (!x || !y) continue;
    std::string key;
    for (std::size_t k = 0; k < si.size(); ++k) key += (k ? " " : "") + format_cell(row[si[k]]);
    if (!lines.count(key)) order.push_back(key);
    lines[key].emplace_back(*x, *y);
    x0 = std::min(x0, *x);
    x1 = std::max(x1, *x);
    y0 = std::min(y0, *y);
    y1 = std::max(y1, *y);
  }
  if (order.empty()) {
    x0 = y0 = 0.0;
    x1 = y1 = 1.0;
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;

  constexpr double W = 640, H = 400, L = 70, R = 170, T = 30, B = 50;
  const auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << L << "\" y=\"18\" font-size=\"13\">" << t.name << ": " << y_column << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    os << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << format_number(xv)
       << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << format_number(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << t.plot.x
     << "</text>\n";
  for (std::size_t n = 0; n < order.size(); ++n) {
    const char* colour = kPalette[n % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : lines[order[n]]) os << format_number(sx(x)) << ',' << format_number(sy(y)) << ' ';
    os << "\"/>\n";
    const double ly = T + 14.0 * static_cast<double>(n);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 34 << "\" y=\"" << ly + 4 << "\">" << order[n] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

std::vector<std::filesystem::path> write_table(const Table& t, const std::filesystem::path& dir, bool svg) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written{dir / (t.name + ".csv")};
  write_file(written.back(), to_csv(t));
  if (svg) {
    for (const auto& y : t.plot.y) {
      written.push_back(dir / (t.name + "_" + y + ".svg"));
      write_file(written.back(), to_svg(t, y));
    }
  }
  return written;
}

}  // namespace fuzzynv::experiments
