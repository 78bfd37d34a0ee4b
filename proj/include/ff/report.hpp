#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ff/leaf.hpp"
#include "ff/models.hpp"
#include "ff/near_symplectic.hpp"

namespace ff {

/// 17 significant digits, enough to round-trip a double exactly.
std::string format_double(double v);

/// Small ordered JSON document builder. Object keys keep insertion order and
/// doubles are rendered through format_double, so serialized output is
/// byte-stable across runs.
class Json {
 public:
  static Json object();
  static Json array();
  static Json str(std::string s);
  static Json number(double v);
  static Json integer(long long v);
  static Json boolean(bool b);
  static Json null();

  Json& set(std::string key, Json v);  // object only
  Json& push(Json v);                  // array only

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Null, Bool, Int, Double, Str, Array, Object };

  void write(std::string& out, int indent, int depth) const;

  Kind kind_ = Kind::Null;
  bool b_ = false;
  long long i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<Json> arr_;
  std::vector<std::pair<std::string, Json>> obj_;
};

/// One CSV line: comma separators, LF ending appended by the callers.
std::string csv_join(std::span<const std::string> cells);

std::string singular_set_csv(const Chart& chart, const SingularSetReport& report);
std::string trajectory_csv(const Chart& chart, size_t casimir_count, const LeafTrajectory& traj);
std::string contrast_csv(const ContrastReport& report);
std::string near_symplectic_csv(const Chart& chart, const NearSymplecticReport& report);

Json scaling_json(const ScalingFit& fit);
Json chart_json(const Chart& chart);
Json poisson_json(const PoissonStructure& p);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ff
