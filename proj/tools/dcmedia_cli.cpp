// JSON-in/JSON-out command line front end. One command per invocation;
// deterministic for a fixed seed. Exit codes: 0 success, 2 validation
// error, 3 numeric failure. A report is always emitted; failures carry a
// machine-readable "error" field.

#include "dcm/dcm.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using dcm::Json;

struct CommonArgs {
  std::string input = "-";
  std::string output = "-";
  std::string format = "json";
  double tol = 1e-8;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--input", args.input, "input document path, or - for stdin");
  cmd->add_option("--output", args.output, "output report path, or - for stdout");
  cmd->add_option("--tol", args.tol, "tolerance override");
  cmd->add_option("--seed", args.seed, "seed for sampled routines");
  cmd->add_option("--format", args.format, "report format (json)")
      ->check(CLI::IsMember({"json"}));
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
}

Json witness_json(const dcm::Dc1Witness& w) {
  Json out = Json::object();
  out["alpha"] = dcm::jsonio::from_scalar(w.alpha);
  out["beta"] = dcm::jsonio::from_scalar(w.beta);
  out["gamma"] = dcm::jsonio::from_scalar(w.gamma);
  out["a"] = dcm::jsonio::from_vector(w.a);
  out["b"] = dcm::jsonio::from_vector(w.b);
  out["residual"] = w.residual;
  return out;
}

Json quartic_json(const dcm::QuarticForm& q) {
  Json coeffs = Json::array();
  const auto& mono = dcm::detail::quartic_monomials();
  for (std::size_t i = 0; i < 35; ++i) {
    Json entry = Json::object();
    entry["monomial"] = Json::array({mono[i][0], mono[i][1], mono[i][2], mono[i][3]});
    entry["value"] = dcm::jsonio::from_scalar(q.coeffs[i]);
    coeffs.push_back(entry);
  }
  Json out = Json::object();
  out["coefficients"] = coeffs;
  out["fit_residual"] = q.fit_residual;
  return out;
}

Json wave_json(const dcm::PlaneWave& w) {
  Json out = Json::object();
  out["nu"] = dcm::jsonio::from_vector(w.nu);
  out["phi"] = dcm::jsonio::from_vector(w.phi);
  out["two_form"] = dcm::jsonio::from_vector(w.two_form);
  out["excitation"] = dcm::jsonio::from_vector(w.excitation);
  const dcm::Scalar pp = dcm::dot6(w.two_form, w.two_form);
  const dcm::Scalar pq = dcm::dot6(w.two_form, w.excitation);
  const dcm::Scalar qq = dcm::dot6(w.excitation, w.excitation);
  Json orth = Json::object();
  orth["phi_phi"] = std::abs(pp);
  orth["phi_psi"] = std::abs(pq);
  orth["psi_psi"] = std::abs(qq);
  out["orthogonality"] = orth;
  const dcm::WaveFields f = dcm::wave_fields(w);
  Json fields = Json::object();
  fields["e"] = dcm::jsonio::from_vector(f.e);
  fields["b"] = dcm::jsonio::from_vector(f.b);
  fields["d"] = dcm::jsonio::from_vector(f.d);
  fields["h"] = dcm::jsonio::from_vector(f.h);
  out["fields"] = fields;
  return out;
}

const char* tag_name(dcm::WaveTag t) {
  switch (t) {
    case dcm::WaveTag::AWave: return "a-wave";
    case dcm::WaveTag::BWave: return "b-wave";
    case dcm::WaveTag::Both: return "both";
    default: return "neither";
  }
}

dcm::Vec4 parse_nu(const std::vector<double>& v) {
  if (v.size() != 4) throw std::invalid_argument("--nu expects 4 components");
  return dcm::Vec4(v[0], v[1], v[2], v[3]);
}

int run_command(const std::string& command, const CommonArgs& args,
                const std::vector<double>& nu_opt, const std::vector<double>& dir_opt,
                const std::string& convert_to) {
  Json report = Json::object();
  report["command"] = command;
  report["tolerances"] = Json::object({{"tol", args.tol}});
  report["warnings"] = Json::array();
  int code = 0;
  try {
    const std::string text = read_input(args.input);
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    dcm::MediumDocument med = dcm::parse_medium_document(doc);
    report["inputs"] = dcm::serialize_medium_document(med);
    Json results = Json::object();

    if (command == "build") {
      results["m"] = dcm::jsonio::from_matrix(med.medium.m());
      results["mg"] = dcm::jsonio::from_matrix(med.medium.mg());
    } else if (command == "ho-decompose") {
      const dcm::HOParts parts = dcm::ho_decompose_mat(med.medium.m());
      results["axion"] = dcm::jsonio::from_scalar(parts.axion_scalar);
      results["principal"] = dcm::jsonio::from_matrix(parts.principal.m);
      results["skewon"] = dcm::jsonio::from_matrix(parts.skewon.m);
      results["reconstruction_residual"] =
          (parts.reconstruct() - med.medium.m()).norm();
    } else if (command == "detect-dcm") {
      dcm::DetectOptions opt;
      opt.accept = args.tol;
      const auto witnesses = dcm::detect_dcm(med.medium, opt);
      Json ws = Json::array();
      for (const auto& w : witnesses) ws.push_back(witness_json(w));
      results["witnesses"] = ws;
      results["found"] = !witnesses.empty();
      if (witnesses.empty())
        report["warnings"].push_back(
            "no witness found under this search; not a proof of non-decomposability");
      if (med.kind == "uniaxial" && !witnesses.empty())
        results["note"] =
            "witness bivectors select the axial field components (TE/TM split)";
    } else if (command == "dispersion") {
      const dcm::QuarticForm quartic =
          dcm::quartic_coefficients(med.medium, args.seed);
      results["quartic"] = quartic_json(quartic);
      if (quartic.max_abs() <= 1e-12)
        report["warnings"].push_back("no dispersion constraint (vanishing quartic)");
      try {
        const auto [q1, q2] = dcm::predicted_factors(med.medium);
        results["factor1"] = dcm::jsonio::from_matrix(q1.s);
        results["factor2"] = dcm::jsonio::from_matrix(q2.s);
        const dcm::FactorCheck fc = dcm::factor_check(quartic, q1, q2);
        results["factor_scale"] = dcm::jsonio::from_scalar(fc.scale);
        results["factor_max_rel_err"] = fc.max_rel_err;
      } catch (const std::invalid_argument&) {
        report["warnings"].push_back("no class provenance; predicted factors unavailable");
      }
    } else if (command == "planewave") {
      std::vector<dcm::Vec4> nus;
      if (!nu_opt.empty()) {
        nus.push_back(parse_nu(nu_opt));
      } else if (!dir_opt.empty()) {
        if (dir_opt.size() != 3)
          throw std::invalid_argument("--direction expects 3 components");
        nus = dcm::dispersion_roots(med.medium.mg(),
                                    dcm::Vec3(dir_opt[0], dir_opt[1], dir_opt[2]));
      } else {
        throw std::invalid_argument("planewave requires --nu or --direction");
      }
      std::optional<dcm::Dc1Witness> witness;
      try {
        witness = dcm::witness_from_provenance(med.medium);
      } catch (const std::invalid_argument&) {
        report["warnings"].push_back("no class provenance; waves are not classified");
      }
      Json waves = Json::array();
      for (const auto& nu : nus) {
        const dcm::PlaneWave w = dcm::solve_plane_wave(med.medium, nu);
        Json wj = wave_json(w);
        if (witness) {
          const dcm::WaveClass cls = dcm::classify_wave(w, witness->a, witness->b, args.tol);
          Json cj = Json::object();
          cj["tag"] = tag_name(cls.tag);
          cj["residual_a"] = cls.residual_a;
          cj["residual_b"] = cls.residual_b;
          wj["classification"] = cj;
        }
        waves.push_back(wj);
      }
      results["waves"] = waves;
    } else if (command == "convert") {
      if (convert_to == "gibbsian") {
        const dcm::GibbsianMedium g = dcm::gibbsian_from_4d(med.medium);
        results["eps_g"] = dcm::jsonio::from_matrix(g.eps_g);
        results["xi_g"] = dcm::jsonio::from_matrix(g.xi_g);
        results["zeta_g"] = dcm::jsonio::from_matrix(g.zeta_g);
        results["mu_g"] = dcm::jsonio::from_matrix(g.mu_g);
      } else if (convert_to == "threed") {
        const dcm::ThreeDSplit s = dcm::split_3d(med.medium);
        results["alpha_d"] = dcm::jsonio::from_matrix(s.alpha_d);
        results["eps_prime"] = dcm::jsonio::from_matrix(s.eps_prime);
        results["mu_inv"] = dcm::jsonio::from_matrix(s.mu_inv);
        results["beta_d"] = dcm::jsonio::from_matrix(s.beta_d);
      } else if (convert_to == "raw") {
        results["m"] = dcm::jsonio::from_matrix(med.medium.m());
      } else {
        throw std::invalid_argument("convert: unknown target '" + convert_to + "'");
      }
    } else if (command == "classify-quadratic") {
      const dcm::QuadraticClassification cls =
          dcm::classify_quadratic_medium(med.medium, args.tol);
      results["kind"] =
          cls.kind == dcm::QuadraticKind::PMedium ? "p_medium" : "q_medium";
      results["recovered"] = dcm::jsonio::from_matrix(cls.recovered);
      results["scale"] = dcm::jsonio::from_scalar(cls.scale);
      results["alpha"] = dcm::jsonio::from_scalar(cls.alpha);
      results["equation_residual"] = cls.equation_residual;
      results["reconstruction_residual"] = cls.reconstruction_residual;
      results["invertible"] =
          Json::array({cls.invertible[0], cls.invertible[1], cls.invertible[2],
                       cls.invertible[3]});
      results["x_double_eigenvalue"] = dcm::jsonio::from_scalar(cls.x_double_eigenvalue);
      results["x_alpha"] = dcm::jsonio::from_scalar(cls.x_alpha);
      if (cls.ill_conditioned)
        report["warnings"].push_back("ill-conditioned classification (condition estimate "
                                     "near the invertibility cutoff)");
    } else {
      throw std::invalid_argument("unknown command: " + command);
    }
    report["results"] = results;
  } catch (const std::invalid_argument& e) {
    report["error"] = e.what();
    code = 2;
  } catch (const dcm::NumericError& e) {
    report["error"] = e.what();
    code = 3;
  }
  try {
    write_output(args.output, dcm::canonical_dump(report));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decomposable bi-anisotropic media toolkit"};
  app.require_subcommand(1);
  CommonArgs args;
  std::vector<double> nu_opt, dir_opt;
  std::string convert_to = "gibbsian";

  const std::vector<std::string> commands = {"build",     "ho-decompose", "detect-dcm",
                                             "dispersion", "planewave",    "convert",
                                             "classify-quadratic"};
  for (const auto& name : commands) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common(cmd, args);
    if (name == "planewave") {
      cmd->add_option("--nu", nu_opt, "full one-form components");
      cmd->add_option("--direction", dir_opt, "spatial direction; solves dispersion roots");
    }
    if (name == "convert")
      cmd->add_option("--to", convert_to, "target: gibbsian|threed|raw")
          ->check(CLI::IsMember({"gibbsian", "threed", "raw"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (const auto& name : commands)
    if (app.get_subcommand(name)->parsed())
      return run_command(name, args, nu_opt, dir_opt, convert_to);
  return 2;
}
