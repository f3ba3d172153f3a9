#include "casurf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "casurf/errors.hpp"

namespace casurf::io {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

double parse_num(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(what + " is empty");
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(x)) {
    throw ConfigError(what + " is not a number: '" + t + "'");
  }
  return x;
}

int parse_int(const std::string& text, const std::string& what) {
  const double x = parse_num(text, what);
  const int n = static_cast<int>(std::lround(x));
  if (std::abs(x - n) > 1e-9) {
    throw ConfigError(what + " is not an integer: '" + text + "'");
  }
  return n;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

KeyValues parse_config_text(std::string_view text) {
  KeyValues kv;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config line " << lineno << " is not 'key = value': '" << body
         << "'";
      throw ConfigError(os.str());
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream os;
      os << "config line " << lineno << " has an empty key";
      throw ConfigError(os.str());
    }
    kv[key] = value;
  }
  return kv;
}

KeyValues parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

WarpingFunction warping_from_string(const std::string& text) {
  const std::string t = trim(text);
  if (t.rfind("table:", 0) == 0) {
    return WarpingFunction::from_table(t.substr(6));
  }
  return WarpingFunction::from_registry(t);
}

GeneratorSpec spec_from_config(const KeyValues& kv) {
  GeneratorSpec spec;
  const auto get = [&kv](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("family")) spec.family = family_from_name(*v);
  if (const auto* v = get("warp")) spec.warping = warping_from_string(*v);
  if (const auto* v = get("theta_deg")) {
    spec.theta = parse_num(*v, "theta_deg") * (3.14159265358979323846 / 180.0);
  }
  if (const auto* v = get("alpha")) {
    spec.alpha = ProfileFunction::expression(*v);
  }
  if (const auto* v = get("t0")) spec.t0 = parse_num(*v, "t0");
  if (const auto* v = get("m")) spec.m = parse_num(*v, "m");
  if (const auto* v = get("b0")) spec.b0 = parse_num(*v, "b0");
  if (const auto* v = get("base_t")) spec.base_t = parse_num(*v, "base_t");
  if (const auto* v = get("base_v")) spec.base_v = parse_num(*v, "base_v");
  if (const auto* v = get("domain")) {
    const auto parts = split(*v, ',');
    if (parts.size() != 4) {
      throw ConfigError("domain wants 'u0,u1,v0,v1', got '" + *v + "'");
    }
    ParamRect r{parse_num(parts[0], "domain.u0"), parse_num(parts[1], "domain.u1"),
                parse_num(parts[2], "domain.v0"), parse_num(parts[3], "domain.v1")};
    if (!(r.u0 < r.u1) || !(r.v0 < r.v1)) {
      throw ConfigError("domain is empty: '" + *v + "'");
    }
    spec.domain = r;
  }
  if (const auto* v = get("grid")) {
    const auto x = v->find('x');
    if (x == std::string::npos) {
      throw ConfigError("grid wants 'NUxNV', got '" + *v + "'");
    }
    spec.grid.nu = parse_int(v->substr(0, x), "grid.nu");
    spec.grid.nv = parse_int(v->substr(x + 1), "grid.nv");
    if (spec.grid.nu < 2 || spec.grid.nv < 2) {
      throw ConfigError("grid must be at least 2x2");
    }
  }
  return spec;
}

std::string config_from_spec(const GeneratorSpec& spec) {
  std::ostringstream os;
  os << "family = " << family_name(spec.family) << "\n";
  os << "warp = " << spec.warping.family() << "\n";
  os << "theta_deg = "
     << format_double(spec.theta * (180.0 / 3.14159265358979323846)) << "\n";
  if (spec.family == Family::TypeI) {
    os << "alpha = " << spec.alpha.describe() << "\n";
    os << "base_v = " << format_double(spec.base_v) << "\n";
  }
  if (spec.family == Family::TypeIII) {
    os << "t0 = " << format_double(spec.t0) << "\n";
  }
  if (spec.family == Family::MinimalPower) {
    os << "m = " << format_double(spec.m) << "\n";
  }
  if (spec.family == Family::Rotational) {
    os << "b0 = " << format_double(spec.b0) << "\n";
  }
  if (spec.base_t) {
    os << "base_t = " << format_double(*spec.base_t) << "\n";
  }
  const ParamRect dom = spec.domain ? *spec.domain : default_domain(spec);
  os << "domain = " << format_double(dom.u0) << "," << format_double(dom.u1)
     << "," << format_double(dom.v0) << "," << format_double(dom.v1) << "\n";
  os << "grid = " << spec.grid.nu << "x" << spec.grid.nv << "\n";
  return os.str();
}

namespace {

bool keep_vertex(const ExportOptions& opt, const AmbientPoint& p) {
  return !opt.exclude_axis || std::hypot(p.x, p.y) >= 1e-9;
}

}  // namespace

void write_obj(std::ostream& os, const WarpedSpace& space,
               const GridGeometry& gg, const ExportOptions& opt) {
  const int nu = gg.grid.nu, nv = gg.grid.nv;
  std::vector<int> index(static_cast<std::size_t>(nu) * nv, 0);
  int next = 1;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const AmbientPoint& p = gg.at(i, j).point;
      if (!keep_vertex(opt, p)) continue;
      index[static_cast<std::size_t>(i) * nv + j] = next++;
      if (opt.half_space) {
        const HalfSpacePoint q = to_half_space(space, p);
        os << "v " << format_double(q.x) << " " << format_double(q.y) << " "
           << format_double(q.z) << "\n";
      } else {
        os << "v " << format_double(p.t) << " " << format_double(p.x) << " "
           << format_double(p.y) << "\n";
      }
    }
  }
  const auto at = [&](int i, int j) {
    return index[static_cast<std::size_t>(i) * nv + j];
  };
  for (int i = 0; i + 1 < nu; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      const int a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1),
                d = at(i, j + 1);
      if (!a || !b || !c || !d) continue;
      if (opt.flip_winding) {
        os << "f " << a << " " << c << " " << b << "\n";
        os << "f " << a << " " << d << " " << c << "\n";
      } else {
        os << "f " << a << " " << b << " " << c << "\n";
        os << "f " << a << " " << c << " " << d << "\n";
      }
    }
  }
}

void write_jsonl(std::ostream& os, const WarpedSpace& /*space*/,
                 const GridGeometry& gg, const ExportOptions& opt) {
  const int nu = gg.grid.nu, nv = gg.grid.nv;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const SurfaceGeometry& g = gg.at(i, j);
      if (!keep_vertex(opt, g.point)) continue;
      os << "{\"u\":" << format_double(gg.grid.u(gg.rect, i))
         << ",\"v\":" << format_double(gg.grid.v(gg.rect, j))
         << ",\"t\":" << format_double(g.point.t)
         << ",\"x\":" << format_double(g.point.x)
         << ",\"y\":" << format_double(g.point.y)
         << ",\"theta\":" << format_double(g.theta)
         << ",\"H\":" << format_double(g.mean_curvature)
         << ",\"K\":" << format_double(g.gauss_curvature) << ",\"residuals\":";
      bool wrote = false;
      if (gg.has_residuals()) {
        const ResidualSet& r = gg.residual(i, j);
        if (std::isfinite(r.gauss) && std::isfinite(r.codazzi) &&
            std::isfinite(r.laplacian)) {
          os << "{\"gauss\":" << format_double(r.gauss)
             << ",\"codazzi\":" << format_double(r.codazzi)
             << ",\"laplacian\":" << format_double(r.laplacian) << "}";
          wrote = true;
        }
      }
      if (!wrote) os << "null";
      os << "}\n";
    }
  }
}

void write_samples(std::ostream& os, const GridGeometry& gg) {
  os << "# sampled immersion: t x y per node, v varying fastest\n";
  os << gg.grid.nu << " " << gg.grid.nv << "\n";
  os << format_double(gg.rect.u0) << " " << format_double(gg.rect.u1) << " "
     << format_double(gg.rect.v0) << " " << format_double(gg.rect.v1) << "\n";
  for (int i = 0; i < gg.grid.nu; ++i) {
    for (int j = 0; j < gg.grid.nv; ++j) {
      const AmbientPoint& p = gg.at(i, j).point;
      os << format_double(p.t) << " " << format_double(p.x) << " "
         << format_double(p.y) << "\n";
    }
  }
}

SampledGrid read_samples(std::istream& is) {
  std::vector<double> nums;
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) nums.push_back(parse_num(tok, "sample value"));
  }
  if (nums.size() < 6) throw ConfigError("sampled grid header is incomplete");
  SampledGrid sg;
  sg.nu = static_cast<int>(std::lround(nums[0]));
  sg.nv = static_cast<int>(std::lround(nums[1]));
  if (sg.nu < 2 || sg.nv < 2) {
    throw ConfigError("sampled grid must be at least 2x2");
  }
  sg.rect = {nums[2], nums[3], nums[4], nums[5]};
  if (!(sg.rect.u0 < sg.rect.u1) || !(sg.rect.v0 < sg.rect.v1)) {
    throw ConfigError("sampled grid domain is empty");
  }
  const std::size_t want = static_cast<std::size_t>(sg.nu) * sg.nv;
  if (nums.size() != 6 + 3 * want) {
    std::ostringstream os;
    os << "sampled grid wants " << want << " 't x y' rows, found "
       << (nums.size() - 6) / 3.0;
    throw ConfigError(os.str());
  }
  sg.points.reserve(want);
  for (std::size_t k = 0; k < want; ++k) {
    sg.points.push_back(
        {nums[6 + 3 * k], nums[6 + 3 * k + 1], nums[6 + 3 * k + 2]});
  }
  return sg;
}

SampledGrid read_samples_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open samples file '" + path + "'");
  return read_samples(f);
}

namespace {

double catmull_rom(double p0, double p1, double p2, double p3, double s) {
  return p1 + 0.5 * s *
                  (p2 - p0 +
                   s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                        s * (3.0 * (p1 - p2) + p3 - p0)));
}

}  // namespace

Immersion immersion_from_samples(const WarpedSpace& space,
                                 const SampledGrid& samples) {
  const auto data = std::make_shared<const SampledGrid>(samples);
  auto map = [data](double u, double v) -> AmbientPoint {
    const SampledGrid& sg = *data;
    const double du = (sg.rect.u1 - sg.rect.u0) / (sg.nu - 1);
    const double dv = (sg.rect.v1 - sg.rect.v0) / (sg.nv - 1);
    const double su = (u - sg.rect.u0) / du;
    const double sv = (v - sg.rect.v0) / dv;
    const int i = std::clamp(static_cast<int>(std::floor(su)), 0, sg.nu - 2);
    const int j = std::clamp(static_cast<int>(std::floor(sv)), 0, sg.nv - 2);
    const double fu = su - i, fv = sv - j;
    const auto fetch = [&sg](int c, int ii, int jj) {
      const AmbientPoint& p =
          sg.points[static_cast<std::size_t>(ii) * sg.nv + jj];
      return c == 0 ? p.t : (c == 1 ? p.x : p.y);
    };
    // Out-of-range stencil nodes are filled by quadratic extrapolation.
    // Clamping to the edge node would halve the edge-cell tangents and tilt
    // the boundary frame by O(h); extrapolated ghosts keep them second order.
    const auto resolve = [](int idx, int n, int* nodes, double* w) {
      if (idx >= 0 && idx < n) {
        nodes[0] = idx;
        w[0] = 1.0;
        return 1;
      }
      const int edge = idx < 0 ? 0 : n - 1;
      const int inward = idx < 0 ? 1 : -1;
      if (n >= 3) {
        nodes[0] = edge;
        nodes[1] = edge + inward;
        nodes[2] = edge + 2 * inward;
        w[0] = 3.0;
        w[1] = -3.0;
        w[2] = 1.0;
        return 3;
      }
      nodes[0] = edge;
      nodes[1] = edge + inward;
      w[0] = 2.0;
      w[1] = -1.0;
      return 2;
    };
    const auto comp = [&](int c, int ii, int jj) {
      int iu[3], jv[3];
      double wu[3], wv[3];
      const int cu = resolve(ii, sg.nu, iu, wu);
      const int cv = resolve(jj, sg.nv, jv, wv);
      double acc = 0.0;
      for (int a = 0; a < cu; ++a)
        for (int b = 0; b < cv; ++b) acc += wu[a] * wv[b] * fetch(c, iu[a], jv[b]);
      return acc;
    };
    double out[3];
    for (int c = 0; c < 3; ++c) {
      double rows[4];
      for (int r = -1; r <= 2; ++r) {
        rows[r + 1] =
            catmull_rom(comp(c, i + r, j - 1), comp(c, i + r, j),
                        comp(c, i + r, j + 1), comp(c, i + r, j + 2), fv);
      }
      out[c] = catmull_rom(rows[0], rows[1], rows[2], rows[3], fu);
    }
    return {out[0], out[1], out[2]};
  };
  return Immersion(space, map, samples.rect);
}

}  // namespace casurf::io
