#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "saa/rng.hpp"
#include "saa/special_functions.hpp"

// Scenario generation: i.i.d. draws of the random vector xi, fully determined
// by (distribution, n, seed). Sets round-trip through a plain text format so
// a sample can be archived or fed back into a solve.

namespace saa {

struct DistributionSpec {
  enum class Kind { uniform, normal, exponential, empirical };

  Kind kind = Kind::uniform;
  double a = 0.0;  // uniform: lo, normal: mean, exponential: rate
  double b = 1.0;  // uniform: hi, normal: std
  std::vector<double> values;  // empirical support
  int dimension = 1;           // components per realization, i.i.d.

  static DistributionSpec uniform_continuous(double lo, double hi, int d = 1) {
    return validated({Kind::uniform, lo, hi, {}, d});
  }
  static DistributionSpec normal(double mean, double std, int d = 1) {
    return validated({Kind::normal, mean, std, {}, d});
  }
  static DistributionSpec exponential(double rate, int d = 1) {
    return validated({Kind::exponential, rate, 0.0, {}, d});
  }
  static DistributionSpec empirical(std::vector<double> vals, int d = 1) {
    return validated({Kind::empirical, 0.0, 0.0, std::move(vals), d});
  }

  static DistributionSpec validated(DistributionSpec spec) {
    detail::require(spec.dimension >= 1, "dimension must be positive");
    switch (spec.kind) {
      case Kind::uniform:
        detail::require(spec.a < spec.b, "uniform bounds require lo < hi");
        break;
      case Kind::normal:
        detail::require(spec.b > 0.0, "normal std must be positive");
        break;
      case Kind::exponential:
        detail::require(spec.a > 0.0, "exponential rate must be positive");
        break;
      case Kind::empirical:
        detail::require(!spec.values.empty(),
                        "empirical support must be nonempty");
        break;
    }
    return spec;
  }

  std::string descriptor() const;
  static DistributionSpec parse(const std::string& descriptor, int dimension);

  friend bool operator==(const DistributionSpec&,
                         const DistributionSpec&) = default;
};

struct ScenarioSet {
  std::vector<double> data;  // row-major n x d
  int n = 0;
  int d = 1;
  std::uint64_t seed = 0;
  DistributionSpec source;
  std::string generator = rng::kGeneratorId;

  std::span<const double> row(int i) const {
    return {data.data() + static_cast<std::size_t>(i) * d,
            static_cast<std::size_t>(d)};
  }
};

namespace detail {

// Shortest decimal string that parses back to exactly the same double.
inline std::string round_trip_repr(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline double draw_component(const DistributionSpec& spec,
                             rng::SplitMix64& stream) {
  using Kind = DistributionSpec::Kind;
  switch (spec.kind) {
    case Kind::uniform:
      return spec.a + (spec.b - spec.a) * stream.next_unit();
    case Kind::normal: {
      // Box-Muller, cosine branch only: portable and stateless.
      const double u1 = stream.next_unit_pos();
      const double u2 = stream.next_unit();
      return spec.a + spec.b * std::sqrt(-2.0 * std::log(u1)) *
                          std::cos(2.0 * std::numbers::pi * u2);
    }
    case Kind::exponential:
      return -std::log(stream.next_unit_pos()) / spec.a;
    case Kind::empirical: {
      auto idx = static_cast<std::size_t>(stream.next_unit() *
                                          spec.values.size());
      if (idx >= spec.values.size()) idx = spec.values.size() - 1;
      return spec.values[idx];
    }
  }
  throw std::logic_error("unreachable distribution kind");
}

}  // namespace detail

// n i.i.d. realizations drawn from a SplitMix64 stream seeded with `seed`,
// consumed in row-major order. Identical (spec, n, seed) give bit-identical
// output.
inline ScenarioSet generate_scenarios(const DistributionSpec& spec, int n,
                                      std::uint64_t seed) {
  DistributionSpec::validated(spec);
  detail::require(n >= 1, "scenario count must be positive");
  ScenarioSet set;
  set.n = n;
  set.d = spec.dimension;
  set.seed = seed;
  set.source = spec;
  set.data.reserve(static_cast<std::size_t>(n) * spec.dimension);
  rng::SplitMix64 stream(seed);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < spec.dimension; ++j)
      set.data.push_back(detail::draw_component(spec, stream));
  return set;
}

inline std::string DistributionSpec::descriptor() const {
  std::string out;
  switch (kind) {
    case Kind::uniform:
      out = "uniform(" + detail::round_trip_repr(a) + "," +
            detail::round_trip_repr(b) + ")";
      break;
    case Kind::normal:
      out = "normal(" + detail::round_trip_repr(a) + "," +
            detail::round_trip_repr(b) + ")";
      break;
    case Kind::exponential:
      out = "exponential(" + detail::round_trip_repr(a) + ")";
      break;
    case Kind::empirical: {
      out = "empirical(";
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += detail::round_trip_repr(values[i]);
      }
      out += ")";
      break;
    }
  }
  return out;
}

inline DistributionSpec DistributionSpec::parse(const std::string& descriptor,
                                                int dimension) {
  const auto open = descriptor.find('(');
  if (open == std::string::npos || descriptor.back() != ')')
    throw std::runtime_error("bad distribution descriptor: " + descriptor);
  const std::string name = descriptor.substr(0, open);
  std::vector<double> params;
  std::string body = descriptor.substr(open + 1,
                                       descriptor.size() - open - 2);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str())
      throw std::runtime_error("bad distribution parameter: " + tok);
    params.push_back(v);
  }
  if (name == "uniform" && params.size() == 2)
    return uniform_continuous(params[0], params[1], dimension);
  if (name == "normal" && params.size() == 2)
    return normal(params[0], params[1], dimension);
  if (name == "exponential" && params.size() == 1)
    return exponential(params[0], dimension);
  if (name == "empirical" && !params.empty())
    return empirical(std::move(params), dimension);
  throw std::runtime_error("bad distribution descriptor: " + descriptor);
}

// Text format:
//   saa-scenarios 1
//   <N> <d> <seed> <dist-descriptor>
//   N lines of d space-separated reals (exact round trip)
inline void write_scenarios(std::ostream& out, const ScenarioSet& set) {
  out << "saa-scenarios 1\n";
  out << set.n << ' ' << set.d << ' ' << set.seed << ' '
      << set.source.descriptor() << '\n';
  for (int i = 0; i < set.n; ++i) {
    const auto row = set.row(i);
    for (int j = 0; j < set.d; ++j) {
      if (j) out << ' ';
      out << detail::round_trip_repr(row[j]);
    }
    out << '\n';
  }
}

inline ScenarioSet read_scenarios(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "saa-scenarios" || version != 1)
    throw std::runtime_error("not a saa-scenarios file");
  ScenarioSet set;
  std::string descriptor;
  if (!(in >> set.n >> set.d >> set.seed >> descriptor) || set.n < 1 ||
      set.d < 1)
    throw std::runtime_error("bad scenario file header");
  set.source = DistributionSpec::parse(descriptor, set.d);
  set.data.resize(static_cast<std::size_t>(set.n) * set.d);
  for (double& v : set.data)
    if (!(in >> v)) throw std::runtime_error("truncated scenario file");
  return set;
}

}  // namespace saa
