#include "pulseforge/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace pulseforge::io {

namespace {

std::ofstream open_binary(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

// Fixed two-decimal formatting for SVG coordinates.
std::string coord(double x) {
  const double r = std::round(x * 100.0) / 100.0;
  std::string s = format_double(r);
  return s;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(const std::string& path, const SweepResult& r) {
  auto out = open_binary(path);
  out << "error,population\n";
  for (size_t i = 0; i < r.errors.size(); ++i)
    out << format_double(r.errors[i]) << ',' << format_double(r.populations[i]) << '\n';
}

void write_table_csv(const std::string& path, const TableResult& t) {
  auto out = open_binary(path);
  out << "scheme,N,computed,paper,abs_dev,rel_dev\n";
  for (const auto& c : t.cells) {
    out << c.scheme << ',' << c.n_pulses << ',' << format_double(c.computed) << ','
        << format_double(c.paper) << ',' << format_double(c.abs_dev()) << ','
        << format_double(c.rel_dev()) << '\n';
  }
}

void write_sweep_svg(const std::string& path, const SweepResult& r, const std::string& title,
                     const std::string& x_label, const std::string& y_label) {
  const double width = 860, height = 520;
  const double ml = 70, mr = 25, mt = 40, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const double x_min = r.errors.front(), x_max = r.errors.back();
  const double span = x_max > x_min ? x_max - x_min : 1.0;
  const auto px = [&](double x) { return ml + (x - x_min) / span * pw; };
  const auto py = [&](double y) { return mt + (1.0 - y) * ph; };

  auto out = open_binary(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << coord(width / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // axes box
  out << "<rect x=\"" << coord(ml) << "\" y=\"" << coord(mt) << "\" width=\"" << coord(pw)
      << "\" height=\"" << coord(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // y ticks at 0, 0.25, ..., 1
  for (int i = 0; i <= 4; ++i) {
    const double y = 0.25 * i;
    out << "<line x1=\"" << coord(ml - 5) << "\" y1=\"" << coord(py(y)) << "\" x2=\"" << coord(ml)
        << "\" y2=\"" << coord(py(y)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << coord(ml - 9) << "\" y=\"" << coord(py(y) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_double(y) << "</text>\n";
  }
  // x ticks at min, min/2, 0, max/2, max
  for (int i = 0; i <= 4; ++i) {
    const double x = x_min + span * i / 4.0;
    out << "<line x1=\"" << coord(px(x)) << "\" y1=\"" << coord(mt + ph) << "\" x2=\""
        << coord(px(x)) << "\" y2=\"" << coord(mt + ph + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << coord(px(x)) << "\" y=\"" << coord(mt + ph + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_double(std::round(x * 1000.0) / 1000.0) << "</text>\n";
  }
  out << "<text x=\"" << coord(ml + pw / 2) << "\" y=\"" << coord(height - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << x_label
      << "</text>\n"
      << "<text x=\"18\" y=\"" << coord(mt + ph / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 18 "
      << coord(mt + ph / 2) << ")\">" << y_label << "</text>\n";

  if (r.errors.size() == 1) {
    out << "<circle cx=\"" << coord(px(r.errors[0])) << "\" cy=\"" << coord(py(r.populations[0]))
        << "\" r=\"3\" fill=\"#1f6fb2\"/>\n";
  } else {
    out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < r.errors.size(); ++i) {
      if (i) out << ' ';
      out << coord(px(r.errors[i])) << ',' << coord(py(r.populations[i]));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void write_text(const std::string& path, const std::string& body) {
  auto out = open_binary(path);
  out << body;
  if (body.empty() || body.back() != '\n') out << '\n';
}

}  // namespace pulseforge::io
