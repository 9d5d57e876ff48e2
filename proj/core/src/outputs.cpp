#include "mapflock/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mapflock {
namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string xml_escape(std::string_view s) {
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

std::string metrics_csv(const RunResult& result) {
  const std::size_t clusters = result.samples.empty() ? 0 : result.samples.front().cluster_coverage.size();
  std::string out = "t,coverage_ratio,fiedler,alive,m0,m1,m2";
  for (std::size_t c = 0; c < clusters; ++c) out += ",rg_" + std::to_string(c);
  out += '\n';
  for (const auto& s : result.samples) {
    out += g6(s.t) + ',' + g6(s.coverage_ratio) + ',' + g6(s.lambda2) + ',' + std::to_string(s.alive);
    for (int count : s.mode_census) out += ',' + std::to_string(count);
    for (double rg : s.cluster_coverage) out += ',' + g6(rg);
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const RunResult& result) {
  std::string out = "t,map_id,x,y,vx,vy,mode,alive\n";
  for (const auto& row : result.trajectory) {
    out += g6(row.t) + ',' + std::to_string(row.map_id) + ',' + g6(row.pos.x) + ',' + g6(row.pos.y) + ',' +
           g6(row.vel.x) + ',' + g6(row.vel.y) + ',' + std::to_string(static_cast<int>(row.mode)) + ',' +
           (row.alive ? "1" : "0") + '\n';
  }
  return out;
}

std::string run_summary(const RunResult& result, const ScenarioConfig& config) {
  std::string out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out += std::string(key) + '=' + value + '\n';
  };
  put("seed", std::to_string(config.seed));
  put("steps", std::to_string(result.samples.empty() ? 0 : result.samples.size() - 1));
  if (!result.samples.empty()) {
    const auto& last = result.samples.back();
    put("final_t", g6(last.t));
    put("final_coverage_ratio", g6(last.coverage_ratio));
    put("final_fiedler", g6(last.lambda2));
    put("final_alive", std::to_string(last.alive));
    put("final_m0", std::to_string(last.mode_census[0]));
    put("final_m1", std::to_string(last.mode_census[1]));
    put("final_m2", std::to_string(last.mode_census[2]));
    for (std::size_t c = 0; c < last.cluster_coverage.size(); ++c) {
      put("final_rg_" + std::to_string(c), g6(last.cluster_coverage[c]));
    }
  }
  put("converged", result.convergence.converged ? "true" : "false");
  put("convergence_time", result.convergence.converged ? g6(result.convergence.time) : "nan");
  std::string applied;
  for (const auto& f : result.applied_failures) {
    if (!applied.empty()) applied += "; ";
    applied += g17(f.time) + ":" + g17(f.fraction);
  }
  put("failures_applied", applied);
  out += format_config(config, "config.");
  return out;
}

OutputPaths default_output_paths(const std::filesystem::path& dir, bool with_trajectory) {
  return {dir / "metrics.csv", dir / "summary.txt",
          with_trajectory ? dir / "trajectory.csv" : std::filesystem::path{}};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_outputs(const RunResult& result, const ScenarioConfig& config, const OutputPaths& paths) {
  write_text_file(paths.metrics, metrics_csv(result));
  write_text_file(paths.summary, run_summary(result, config));
  if (!paths.trajectory.empty()) write_text_file(paths.trajectory, trajectory_csv(result));
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  const auto lines = split_lines(text);
  std::size_t line_no = 0;
  for (auto raw : lines) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (table.header.empty()) {
      for (auto c : cells) table.header.emplace_back(c);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": non-numeric field '" + std::string(c) + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw std::runtime_error("csv has no header");
  return table;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  for (auto line : split_lines(text)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    out[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

std::string render_svg(const CsvTable& table, const PlotOptions& options) {
  std::vector<std::size_t> series;
  if (options.columns.empty()) {
    for (std::size_t c = 1; c < table.header.size(); ++c) series.push_back(c);
  } else {
    for (const auto& name : options.columns) series.push_back(table.column(name));
  }

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const auto& row : table.rows) {
    for (std::size_t c : series) {
      const double x = row[0];
      const double y = row[c];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const double left = 70, right = 150, top = 40, bottom = 50;
  const double pw = options.width - left - right;
  const double ph = options.height - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                             "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << xml_escape(options.title) << "</text>\n";
  }
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    svg << "<text x=\"" << sx(fx) << "\" y=\"" << top + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << g6(fx) << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << sy(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << g6(fy) << "</text>\n";
  }
  svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << options.height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(table.header[0])
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    bool sep = false;
    for (const auto& row : table.rows) {
      if (!std::isfinite(row[0]) || !std::isfinite(row[series[s]])) continue;
      if (sep) svg << ' ';
      svg << sx(row[0]) << ',' << sy(row[series[s]]);
      sep = true;
    }
    svg << "\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(s) + 8.0;
    svg << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + pw + 34 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(table.header[series[s]]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mapflock
