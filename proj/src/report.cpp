#include "ff/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ff {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::Object;
  return j;
}

Json Json::array() {
  Json j;
  j.kind_ = Kind::Array;
  return j;
}

Json Json::str(std::string s) {
  Json j;
  j.kind_ = Kind::Str;
  j.s_ = std::move(s);
  return j;
}

Json Json::number(double v) {
  Json j;
  j.kind_ = Kind::Double;
  j.d_ = v;
  return j;
}

Json Json::integer(long long v) {
  Json j;
  j.kind_ = Kind::Int;
  j.i_ = v;
  return j;
}

Json Json::boolean(bool b) {
  Json j;
  j.kind_ = Kind::Bool;
  j.b_ = b;
  return j;
}

Json Json::null() { return Json{}; }

Json& Json::set(std::string key, Json v) {
  if (kind_ != Kind::Object) throw std::logic_error("Json::set on a non-object");
  obj_.emplace_back(std::move(key), std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  if (kind_ != Kind::Array) throw std::logic_error("Json::push on a non-array");
  arr_.push_back(std::move(v));
  return *this;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
  out += '\n';
  out.append(static_cast<size_t>(indent) * depth, ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::Null:
      out += "null";
      break;
    case Kind::Bool:
      out += b_ ? "true" : "false";
      break;
    case Kind::Int:
      out += std::to_string(i_);
      break;
    case Kind::Double:
      if (std::isfinite(d_))
        out += format_double(d_);
      else
        out += "null";
      break;
    case Kind::Str:
      escape_into(out, s_);
      break;
    case Kind::Array:
      if (arr_.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      for (size_t i = 0; i < arr_.size(); ++i) {
        if (i > 0) out += ',';
        newline_indent(out, indent, depth + 1);
        arr_[i].write(out, indent, depth + 1);
      }
      newline_indent(out, indent, depth);
      out += ']';
      break;
    case Kind::Object:
      if (obj_.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      for (size_t i = 0; i < obj_.size(); ++i) {
        if (i > 0) out += ',';
        newline_indent(out, indent, depth + 1);
        escape_into(out, obj_[i].first);
        out += ": ";
        obj_[i].second.write(out, indent, depth + 1);
      }
      newline_indent(out, indent, depth);
      out += '}';
      break;
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

std::string csv_join(std::span<const std::string> cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string singular_set_csv(const Chart& chart, const SingularSetReport& report) {
  std::vector<std::string> cells(chart.names().begin(), chart.names().end());
  cells.insert(cells.end(), {"rank", "label", "exact"});
  std::string out = csv_join(cells);
  for (const auto& row : report.rows) {
    cells.clear();
    for (double c : row.x) cells.push_back(format_double(c));
    cells.push_back(std::to_string(row.rank));
    cells.push_back(to_string(row.label));
    cells.push_back(row.exact ? "1" : "0");
    out += csv_join(cells);
  }
  return out;
}

std::string trajectory_csv(const Chart& chart, size_t casimir_count, const LeafTrajectory& traj) {
  std::vector<std::string> cells{"t"};
  cells.insert(cells.end(), chart.names().begin(), chart.names().end());
  for (size_t i = 0; i < casimir_count; ++i) cells.push_back("F" + std::to_string(i + 1));
  std::string out = csv_join(cells);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    cells.clear();
    cells.push_back(format_double(traj.times[i]));
    for (double c : traj.points[i]) cells.push_back(format_double(c));
    for (double v : traj.casimir_values[i]) cells.push_back(format_double(v));
    out += csv_join(cells);
  }
  return out;
}

std::string contrast_csv(const ContrastReport& report) {
  std::vector<std::string> cells{"radius", "omega_norm", "area_ratio"};
  std::string out = csv_join(cells);
  for (const auto& row : report.rows) {
    cells = {format_double(row.radius), format_double(row.omega_norm),
             format_double(row.area_ratio)};
    out += csv_join(cells);
  }
  return out;
}

std::string near_symplectic_csv(const Chart& chart, const NearSymplecticReport& report) {
  std::vector<std::string> cells(chart.names().begin(), chart.names().end());
  cells.insert(cells.end(), {"wedge_square", "zero", "rank", "gradient_rank"});
  std::string out = csv_join(cells);
  for (const auto& row : report.rows) {
    cells.clear();
    for (double c : row.x) cells.push_back(format_double(c));
    cells.push_back(format_double(row.wedge_square));
    cells.push_back(row.zero ? "1" : "0");
    cells.push_back(std::to_string(row.rank));
    cells.push_back(row.gradient_rank ? std::to_string(*row.gradient_rank) : "");
    out += csv_join(cells);
  }
  return out;
}

Json scaling_json(const ScalingFit& fit) {
  Json j = Json::object();
  Json radii = Json::array();
  for (double r : fit.radii) radii.push(Json::number(r));
  Json values = Json::array();
  for (double v : fit.values) values.push(Json::number(v));
  j.set("radii", std::move(radii));
  j.set("values", std::move(values));
  j.set("slope", Json::number(fit.slope));
  j.set("max_log_residual", Json::number(fit.max_log_residual));
  return j;
}

Json chart_json(const Chart& chart) {
  Json axes = Json::array();
  for (const Axis& a : chart.axes()) {
    Json ja = Json::object();
    ja.set("name", Json::str(a.name));
    if (a.periodic) {
      ja.set("periodic", Json::boolean(true));
      ja.set("period", Json::number(a.period));
    } else {
      ja.set("lo", Json::str(a.lo.to_string()));
      ja.set("hi", Json::str(a.hi.to_string()));
    }
    axes.push(std::move(ja));
  }
  Json j = Json::object();
  j.set("axes", std::move(axes));
  j.set("orientation", Json::str(chart.orientation().to_string(chart.names())));
  return j;
}

Json poisson_json(const PoissonStructure& p) {
  Json j = Json::object();
  j.set("model", Json::str(p.model_tag));
  j.set("chart", chart_json(p.chart));
  j.set("conformal_factor", Json::str(p.conformal_factor.to_string(p.chart.names())));
  Json casimirs = Json::array();
  for (const ScalarField& f : p.casimirs) casimirs.push(Json::str(f.to_string(p.chart.names())));
  j.set("casimirs", std::move(casimirs));
  Json biv = Json::object();
  for (const auto& [key, f] : p.bivector.coefficients()) {
    std::string name = p.chart.names()[key[0]];
    name += ",";
    name += p.chart.names()[key[1]];
    biv.set(std::move(name), Json::str(f.to_string(p.chart.names())));
  }
  j.set("bivector", std::move(biv));
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ff
