#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "casurf/generators.hpp"
#include "casurf/surface.hpp"

namespace casurf::io {

// Flat key = value configuration ('#' starts a comment, later keys win).
// Parsing keeps every key; each consumer reads the ones it knows.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(std::string_view text);
KeyValues parse_config_file(const std::string& path);

// Registry string ("exp", "linear:1,1", ...) or "table:<path>" for sampled
// warpings.
WarpingFunction warping_from_string(const std::string& text);

// Read the generator-related keys (family, warp, theta_deg, alpha, t0, m, b0,
// base_t, base_v, domain, grid); unrelated keys are left to the caller.
GeneratorSpec spec_from_config(const KeyValues& kv);
std::string config_from_spec(const GeneratorSpec& spec);

// "%.17g": shortest fixed formatting that round-trips doubles.
std::string format_double(double x);

struct ExportOptions {
  bool half_space = false;    // write the isometric upper half-space image
  bool exclude_axis = false;  // drop vertices with hypot(x, y) < 1e-9
  bool flip_winding = false;  // reverse triangle orientation globally
};

// ASCII OBJ, two triangles per kept grid cell, consistent winding.
void write_obj(std::ostream& os, const WarpedSpace& space,
               const GridGeometry& gg, const ExportOptions& opt = {});

// One JSON object per kept grid node:
//   {"u":..,"v":..,"t":..,"x":..,"y":..,"theta":..,"H":..,"K":..,
//    "residuals":{"gauss":..,"codazzi":..,"laplacian":..}}
// residuals is null on nodes whose stencil would leave the domain (or when
// the sweep carried none).
void write_jsonl(std::ostream& os, const WarpedSpace& space,
                 const GridGeometry& gg, const ExportOptions& opt = {});

// Plain-text sampled immersion: "nu nv", "u0 u1 v0 v1", then nu*nv rows of
// "t x y" in row-major order (v fastest). '#' starts a comment.
struct SampledGrid {
  int nu = 0, nv = 0;
  ParamRect rect;
  std::vector<AmbientPoint> points;
};

void write_samples(std::ostream& os, const GridGeometry& gg);
SampledGrid read_samples(std::istream& is);
SampledGrid read_samples_file(const std::string& path);

// Catmull-Rom bicubic interpolant through the samples; derivative closures
// are left unset, so downstream geometry runs in finite-difference mode.
Immersion immersion_from_samples(const WarpedSpace& space,
                                 const SampledGrid& samples);

}  // namespace casurf::io
