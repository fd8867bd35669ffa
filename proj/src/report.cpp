#include "conecalib/report.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace conecalib {

using ordered_json = nlohmann::ordered_json;

std::string format_g17(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// JSON has no infinity literal; divergent bounds travel as the string "inf".
ordered_json json_real(double x) {
  if (std::isfinite(x)) return x;
  return format_g17(x);
}

}  // namespace

std::string CertReport::to_json() const {
  ordered_json j;
  j["schema"] = 1;

  ordered_json cone;
  cone["row"] = params.row_id;
  cone["group"] = group;
  cone["link"] = link_label;
  cone["family"] =
      params.family == Family::Stretched ? "stretched" : "half_disc";
  ordered_json shape = ordered_json::object();
  if (params.shape.r) shape["r"] = *params.shape.r;
  if (params.shape.s) shape["s"] = *params.shape.s;
  if (params.shape.k) shape["k"] = *params.shape.k;
  cone["shape"] = shape;
  j["cone"] = cone;

  ordered_json pj;
  pj["l"] = params.l;
  pj["p"] = params.p;
  pj["q"] = params.q;
  pj["alpha"] = params.alpha;
  pj["theta0"] = params.theta0;
  pj["tau"] = params.tau;
  j["params"] = pj;

  j["beta"] = verdict.beta;
  j["verdict"] = to_string(verdict.verdict);
  j["method"] = to_string(verdict.method);
  j["tol"] = verdict.tol;
  j["sup_psi"] = json_real(verdict.sup_psi);
  j["sup_location"] = verdict.sup_location;
  if (verdict.local_interval)
    j["local_interval"] = {verdict.local_interval->first,
                           verdict.local_interval->second};
  else
    j["local_interval"] = nullptr;
  j["eta_roots"] = verdict.eta_roots;
  j["version"] = CONECALIB_VERSION;
  if (!stable) j["wall_time_ms"] = wall_time_ms;
  return j.dump(2) + "\n";
}

std::string csv_table(const std::vector<CsvColumn>& columns) {
  if (columns.empty()) return "\n";
  const size_t rows = columns.front().values.size();
  for (const CsvColumn& c : columns)
    if (c.values.size() != rows)
      throw std::invalid_argument("csv columns must have equal length");
  std::string out;
  for (size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c].header;
  }
  out += '\n';
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += format_g17(columns[c].values[r]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string svg_line_chart(const std::vector<double>& x,
                           const std::vector<std::vector<double>>& ys,
                           const std::vector<std::string>& labels,
                           const std::string& title, bool y1_reference) {
  if (x.empty() || ys.empty())
    throw std::invalid_argument("svg chart needs data");
  for (const auto& y : ys)
    if (y.size() != x.size())
      throw std::invalid_argument("svg series must match the x grid");

  const double W = 960, H = 600;
  const double ml = 70, mr = 24, mt = 48, mb = 56;
  double xmin = x.front(), xmax = x.back();
  double ymin = 0, ymax = y1_reference ? 1.0 : 0.0;
  for (const auto& y : ys)
    for (double v : y)
      if (std::isfinite(v)) ymax = std::max(ymax, v);
  ymax = std::min(ymax, 10.0);  // keep divergent tails from flattening the chart
  if (!(ymax > ymin)) ymax = ymin + 1;
  const double sx = (W - ml - mr) / (xmax - xmin);
  const double sy = (H - mt - mb) / (ymax - ymin);
  auto px = [&](double v) { return ml + (v - xmin) * sx; };
  auto py = [&](double v) { return H - mb - (v - ymin) * sy; };

  static const char* palette[] = {"#1f6feb", "#d1242f", "#1a7f37",
                                  "#8250df", "#bf8700", "#57606a"};

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) +
       "\" height=\"" + fmt(H) + "\" viewBox=\"0 0 " + fmt(W) + " " + fmt(H) +
       "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(W / 2) + "\" y=\"28\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"18\">" + title + "</text>\n";

  // axes
  s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" +
       fmt(W - mr) + "\" y2=\"" + fmt(H - mb) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) +
       "\" y2=\"" + fmt(H - mb) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 6; ++i) {
    const double tx = xmin + (xmax - xmin) * i / 6.0;
    const double ty = ymin + (ymax - ymin) * i / 6.0;
    s += "<line x1=\"" + fmt(px(tx)) + "\" y1=\"" + fmt(H - mb) + "\" x2=\"" +
         fmt(px(tx)) + "\" y2=\"" + fmt(H - mb + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(px(tx)) + "\" y=\"" + fmt(H - mb + 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" + fmt(tx, "%.4g") + "</text>\n";
    s += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(py(ty)) + "\" x2=\"" +
         fmt(ml) + "\" y2=\"" + fmt(py(ty)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py(ty) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"12\">" + fmt(ty, "%.4g") + "</text>\n";
  }

  if (y1_reference && 1.0 >= ymin && 1.0 <= ymax)
    s += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(py(1.0)) + "\" x2=\"" +
         fmt(W - mr) + "\" y2=\"" + fmt(py(1.0)) +
         "\" stroke=\"#999\" stroke-dasharray=\"6,4\"/>\n";

  for (size_t k = 0; k < ys.size(); ++k) {
    std::string pts;
    for (size_t i = 0; i < x.size(); ++i) {
      double v = ys[k][i];
      if (!std::isfinite(v)) v = ymax;
      v = std::min(std::max(v, ymin), ymax);
      pts += fmt(px(x[i])) + "," + fmt(py(v)) + " ";
    }
    s += "<polyline fill=\"none\" stroke=\"" +
         std::string(palette[k % 6]) + "\" stroke-width=\"1.5\" points=\"" +
         pts + "\"/>\n";
    const std::string label = k < labels.size() ? labels[k] : "series";
    s += "<text x=\"" + fmt(ml + 12) + "\" y=\"" + fmt(mt + 18 + 18 * k) +
         "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" +
         palette[k % 6] + "\">" + label + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("short write: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("rename failed for " + path + ": " + ec.message());
  }
}

}  // namespace conecalib
