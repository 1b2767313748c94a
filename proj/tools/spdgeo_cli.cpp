// spdgeo: distances, geodesics, random instances, verification reports and
// bicone coordinates from the command line.
//
// Exit codes: 0 ok, 1 verification failed, 2 parse/usage error, 3 domain error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdgeo/airm.hpp"
#include "spdgeo/barrier.hpp"
#include "spdgeo/bounds.hpp"
#include "spdgeo/hilbert.hpp"
#include "spdgeo/io.hpp"
#include "spdgeo/random.hpp"

namespace {

using namespace spdgeo;
using Sym = SymmetricMatrix<double>;
using Vpm = VpmMatrix<double>;
using Spd = SpdMatrix<double>;

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kDomain = 3 };

struct DistArgs {
  std::string metric = "hilbert";
  std::string file_a, file_b;
  std::string format = "json";
  std::string out;
};

struct GeodesicArgs {
  std::string space = "hilbert_vpm";
  std::string file_a, file_b;
  int samples = 11;
  std::string out;
};

struct GenArgs {
  std::string kind = "vpm";
  int n = 2;
  int count = 1;
  std::uint64_t seed = 42;
  bool near_boundary = false;
  std::string out;
};

struct BiconeArgs {
  std::string input = "-";
  std::string out;
};

Sym load_matrix(const std::string& path) { return io::parse_matrix(io::read_text(path)); }

int cmd_dist(const DistArgs& a) {
  double value = 0.0;
  const std::string& m = a.metric;
  if (m == "simplex") {
    value = simplex_distance(io::parse_simplex(io::read_text(a.file_a)), io::parse_simplex(io::read_text(a.file_b)));
  } else {
    const Sym sa = load_matrix(a.file_a), sb = load_matrix(a.file_b);
    if (m == "hilbert") {
      value = hilbert_distance(Vpm(sa), Vpm(sb));
    } else if (m == "airm") {
      value = airm_distance(Spd(sa), Spd(sb));
    } else if (m == "airm_pushed") {
      value = airm_pushed(Vpm(sa), Vpm(sb));
    } else if (m == "bilogdet") {
      value = bregman_bilogdet(Vpm(sa), Vpm(sb));
    } else if (m == "logdet") {
      value = bregman_logdet(Spd(sa), Spd(sb));
    } else {
      value = projective_distance(Spd(sa), Spd(sb));
    }
  }
  std::string text;
  if (a.format == "csv") {
    text = "metric,value\n" + m + "," + io::format_scalar(value) + "\n";
  } else {
    text = "{\"metric\":\"" + m + "\",\"value\":" + io::format_scalar(value) + "}\n";
  }
  io::write_text(a.out, text);
  return kOk;
}

std::string with_s(double s, const std::string& doc) { return "{\"s\":" + io::format_scalar(s) + "," + doc.substr(1); }

int cmd_geodesic(const GeodesicArgs& a) {
  if (a.samples < 2) throw Error(ErrorKind::Parse, "--samples must be >= 2");
  std::string text;
  const int k = a.samples;
  auto s_at = [k](int i) { return i == k - 1 ? 1.0 : double(i) / double(k - 1); };
  if (a.space == "hilbert_simplex") {
    const auto p = io::parse_simplex(io::read_text(a.file_a));
    const auto q = io::parse_simplex(io::read_text(a.file_b));
    for (int i = 0; i < k; ++i) text += with_s(s_at(i), io::simplex_json(simplex_geodesic(p, q, s_at(i)).probs())) + "\n";
  } else if (a.space == "airm") {
    const Spd x = Spd(load_matrix(a.file_a)), y = Spd(load_matrix(a.file_b));
    for (int i = 0; i < k; ++i) text += with_s(s_at(i), io::matrix_json(airm_geodesic(x, y, s_at(i)).matrix())) + "\n";
  } else {
    const GeodesicSpec<double> spec(Vpm(load_matrix(a.file_a)), Vpm(load_matrix(a.file_b)));
    for (int i = 0; i < k; ++i) text += with_s(s_at(i), io::matrix_json(hilbert_geodesic(spec, s_at(i)).matrix())) + "\n";
  }
  io::write_text(a.out, text);
  return kOk;
}

int cmd_verify(const VerifyConfig& config, const std::string& out) {
  const auto report = bounds_report(config);
  io::write_text(out, report_json(report));
  return report.all_pass ? kOk : kVerifyFailed;
}

int cmd_gen(const GenArgs& a) {
  if (a.n < 1) throw Error(ErrorKind::Parse, "--n must be >= 1");
  if (a.kind == "simplex" && a.n < 2) throw Error(ErrorKind::Parse, "simplex points need --n >= 2");
  if (a.count < 1) throw Error(ErrorKind::Parse, "--count must be >= 1");
  std::string text;
  for (int i = 0; i < a.count; ++i) {
    Rng rng = make_rng(a.seed, 0, static_cast<std::uint64_t>(i));
    if (a.kind == "spd") {
      text += io::matrix_json(random_spd(a.n, rng).matrix());
    } else if (a.kind == "simplex") {
      text += io::simplex_json(random_simplex(a.n, rng).probs());
    } else {
      text += io::matrix_json(random_vpm(a.n, rng, a.near_boundary).matrix());
    }
    text += "\n";
  }
  io::write_text(a.out, text);
  return kOk;
}

int cmd_bicone(const BiconeArgs& a) {
  std::string text = "x,y,z\n";
  for (const auto& m : io::parse_matrix_stream(io::read_text(a.input))) {
    const auto p = bicone_coords(Vpm(m)).cartesian();
    text += io::format_scalar(p(0)) + "," + io::format_scalar(p(1)) + "," + io::format_scalar(p(2)) + "\n";
  }
  io::write_text(a.out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of the SPD cone and the VPM bicone"};
  app.require_subcommand(1);

  DistArgs dist;
  auto* c_dist = app.add_subcommand("dist", "Distance or divergence between two inputs");
  c_dist->add_option("--metric", dist.metric)
      ->check(CLI::IsMember({"hilbert", "airm", "airm_pushed", "bilogdet", "logdet", "simplex", "projective"}));
  c_dist->add_option("a", dist.file_a, "First input (JSON)")->required();
  c_dist->add_option("b", dist.file_b, "Second input (JSON)")->required();
  c_dist->add_option("--format", dist.format)->check(CLI::IsMember({"json", "csv"}));
  c_dist->add_option("--out", dist.out, "Output file (default stdout)");

  GeodesicArgs geo;
  auto* c_geo = app.add_subcommand("geodesic", "Sample a geodesic as JSON lines");
  c_geo->add_option("--space", geo.space)->check(CLI::IsMember({"hilbert_vpm", "hilbert_simplex", "airm"}));
  c_geo->add_option("a", geo.file_a)->required();
  c_geo->add_option("b", geo.file_b)->required();
  c_geo->add_option("--samples", geo.samples);
  c_geo->add_option("--out", geo.out);

  VerifyConfig verify;
  std::string verify_out;
  auto* c_verify = app.add_subcommand("verify", "Run the verification suites and emit a JSON report");
  c_verify->add_option("--suite", verify.suite)->check(CLI::IsMember({"all", "hilbert", "barrier", "bounds", "lemmas"}));
  c_verify->add_option("--n", verify.dims, "Dimensions, e.g. 1,2,3,4,8")->delimiter(',');
  c_verify->add_option("--trials", verify.trials);
  c_verify->add_option("--seed", verify.seed);
  c_verify->add_option("--out", verify_out);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate random instances as JSON lines");
  c_gen->add_option("--kind", gen.kind)->check(CLI::IsMember({"spd", "vpm", "simplex"}));
  c_gen->add_option("--n", gen.n);
  c_gen->add_option("--count", gen.count);
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_flag("--near-boundary", gen.near_boundary);
  c_gen->add_option("--out", gen.out);

  BiconeArgs bic;
  auto* c_bic = app.add_subcommand("bicone", "Cartesian bicone coordinates of 2x2 VPM matrices as CSV");
  c_bic->add_option("input", bic.input, "File or - for stdin");
  c_bic->add_option("--out", bic.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*c_dist) return cmd_dist(dist);
    if (*c_geo) return cmd_geodesic(geo);
    if (*c_verify) return cmd_verify(verify, verify_out);
    if (*c_gen) return cmd_gen(gen);
    if (*c_bic) return cmd_bicone(bic);
  } catch (const spdgeo::Error& e) {
    std::cerr << "spdgeo: " << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? kParse : kDomain;
  }
  return kParse;
}
