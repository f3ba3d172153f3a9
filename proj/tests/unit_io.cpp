#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "casurf/generators.hpp"
#include "casurf/io.hpp"
#include "casurf/surface.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace casurf;

namespace {

GeneratorSpec sample_spec() {
  GeneratorSpec spec;
  spec.family = Family::Rotational;
  spec.warping = WarpingFunction::from_registry("exp");
  spec.theta = 55.0 * M_PI / 180.0;
  spec.grid = Grid{16, 16};
  return spec;
}

int count_lines_with(const std::string& text, const std::string& prefix) {
  int n = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("config text parses comments, spacing and overrides") {
    const auto kv = io::parse_config_text(
        "# surface under test\n"
        "family = type_i\n"
        "warp= linear:1,1\n"
        "theta_deg =30\n"
        "alpha = 0.3*sin(v)\n"
        "theta_deg = 45\n"
        "grid = 24x12\n");
    CHECK(kv.at("family") == "type_i");
    CHECK(kv.at("theta_deg") == "45");
    const GeneratorSpec spec = io::spec_from_config(kv);
    CHECK(spec.family == Family::TypeI);
    CHECK(spec.theta == doctest::Approx(M_PI / 4.0));
    CHECK(spec.grid.nu == 24);
    CHECK(spec.grid.nv == 12);
  }

  TEST_CASE("malformed config lines carry their line number") {
    try {
      io::parse_config_text("family = type_i\nnonsense line\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(
        io::spec_from_config(io::parse_config_text("theta_deg = ninety\n")),
        ConfigError);
    CHECK_THROWS_AS(
        io::spec_from_config(io::parse_config_text("grid = 24\n")),
        ConfigError);
    CHECK_THROWS_AS(
        io::spec_from_config(io::parse_config_text("family = type_ix\n")),
        ConfigError);
  }

  TEST_CASE("specs round-trip through their config rendering") {
    GeneratorSpec spec = sample_spec();
    spec.b0 = 2.5;
    const std::string text = io::config_from_spec(spec);
    const GeneratorSpec back = io::spec_from_config(io::parse_config_text(text));
    CHECK(back.family == spec.family);
    CHECK(back.theta == doctest::Approx(spec.theta).epsilon(1e-15));
    CHECK(back.b0 == spec.b0);
    CHECK(back.warping.family() == "exp");
    CHECK(back.grid.nu == spec.grid.nu);
    // Structured fields survive a second pass untouched.
    const GeneratorSpec again =
        io::spec_from_config(io::parse_config_text(io::config_from_spec(back)));
    CHECK(again.family == back.family);
    CHECK(again.grid.nu == back.grid.nu);
    CHECK(again.b0 == back.b0);
    CHECK(again.theta == doctest::Approx(back.theta).epsilon(1e-15));
  }

  TEST_CASE("OBJ meshes carry one vertex per node and two faces per cell") {
    const GeneratorSpec spec = sample_spec();
    const Immersion im = make_surface(spec);
    const auto gg = sweep_grid(im, spec.grid);
    std::ostringstream os;
    io::write_obj(os, im.space(), gg);
    const std::string text = os.str();
    CHECK(count_lines_with(text, "v ") == 16 * 16);
    CHECK(count_lines_with(text, "f ") == 2 * 15 * 15);

    // The half-space image exists only over the exponential warping.
    std::ostringstream hs;
    io::ExportOptions opt;
    opt.half_space = true;
    io::write_obj(hs, im.space(), gg, opt);
    CHECK(count_lines_with(hs.str(), "v ") == 16 * 16);

    GeneratorSpec flat = sample_spec();
    flat.warping = WarpingFunction::from_registry("linear:1,1");
    const Immersion im2 = make_surface(flat);
    const auto gg2 = sweep_grid(im2, flat.grid);
    std::ostringstream bad;
    CHECK_THROWS_AS(io::write_obj(bad, im2.space(), gg2, opt), ModelMismatch);
  }

  TEST_CASE("near-axis vertices are dropped together with their faces") {
    // A flat strip through the axis x = y = 0: nodes at v = 0 must vanish.
    WarpedSpace sp(WarpingFunction::from_registry("constant:1"));
    auto map = [](double u, double v) { return AmbientPoint{u, v, 0.0}; };
    Immersion im(sp, map, ParamRect{0.0, 1.0, -1.0, 1.0});
    const auto gg = sweep_grid(im, Grid{3, 3});
    std::ostringstream os;
    io::ExportOptions opt;
    opt.exclude_axis = true;
    io::write_obj(os, sp, gg, opt);
    CHECK(count_lines_with(os.str(), "v ") == 6);   // 9 nodes, 3 on the axis
    CHECK(count_lines_with(os.str(), "f ") == 0);   // every cell touches one
    std::ostringstream keep;
    io::write_obj(keep, sp, gg);
    CHECK(count_lines_with(keep.str(), "v ") == 9);
    CHECK(count_lines_with(keep.str(), "f ") == 8);
  }

  TEST_CASE("JSONL records parse and keep their key order") {
    const GeneratorSpec spec = sample_spec();
    const Immersion im = make_surface(spec);
    const auto gg = sweep_grid(im, Grid{6, 6}, {}, /*with_residuals=*/true);
    std::ostringstream os;
    io::write_jsonl(os, im.space(), gg);
    std::istringstream is(os.str());
    std::string line;
    int records = 0, with_residuals = 0;
    while (std::getline(is, line)) {
      ++records;
      const auto j = nlohmann::json::parse(line);
      CHECK(j.contains("u"));
      CHECK(j.contains("theta"));
      CHECK(j.contains("K"));
      if (!j["residuals"].is_null()) {
        ++with_residuals;
        CHECK(j["residuals"]["gauss"].is_number());
      }
      CHECK(line.rfind("{\"u\":", 0) == 0);  // ordered serialization
    }
    CHECK(records == 36);
    CHECK(with_residuals > 0);
    CHECK(with_residuals < 36);
  }

  TEST_CASE("sample tables round-trip bit-exactly at the nodes") {
    const GeneratorSpec spec = sample_spec();
    const Immersion im = make_surface(spec);
    const auto gg = sweep_grid(im, Grid{12, 12});
    std::ostringstream os;
    io::write_samples(os, gg);
    std::istringstream is(os.str());
    const io::SampledGrid back = io::read_samples(is);
    REQUIRE(back.nu == 12);
    REQUIRE(back.nv == 12);
    REQUIRE(back.points.size() == 144);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        const auto& p = gg.at(i, j).point;
        const auto& q = back.points[static_cast<std::size_t>(i) * 12 + j];
        CHECK(p.t == q.t);
        CHECK(p.x == q.x);
        CHECK(p.y == q.y);
      }
    }

    // The interpolated immersion reproduces the nodes exactly.
    const Immersion interp = io::immersion_from_samples(im.space(), back);
    CHECK(interp.mode() == DerivativeMode::FiniteDifference);
    const double u = back.rect.u0, v = back.rect.v0;
    const auto p0 = interp.at(u, v);
    CHECK(p0.t == doctest::Approx(back.points[0].t).epsilon(1e-14));

    // A denser table keeps the interpolant's derivatives inside the
    // finite-difference gates, so classification sees the source surface.
    const auto dense = sweep_grid(im, Grid{96, 96});
    std::ostringstream ds;
    io::write_samples(ds, dense);
    std::istringstream dsin(ds.str());
    const Immersion fine =
        io::immersion_from_samples(im.space(), io::read_samples(dsin));
    const auto rep = classify(fine, Grid{16, 16});
    CHECK(rep.verdict == "TYPE_I");
    CHECK(rep.theta_hat == doctest::Approx(spec.theta).epsilon(1e-4));
  }

  TEST_CASE("sample parsing validates shape and count") {
    std::istringstream tiny("1 4\n0 1 0 1\n0 0 0\n0 0 0\n0 0 0\n0 0 0\n");
    CHECK_THROWS_AS(io::read_samples(tiny), ConfigError);
    std::istringstream short_rows("2 2\n0 1 0 1\n0 0 0\n1 1 1\n2 2 2\n");
    CHECK_THROWS_AS(io::read_samples(short_rows), ConfigError);
  }
}
