#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qgt/report.hpp"

using namespace qgt;

namespace {

struct CommonOpts {
  std::string file;
  std::string json_out;
  int cap = 0;
  bool emit_relations = false;
};

SpecFile load(const CommonOpts& opt) {
  SpecFile spec = parse_spec_file(opt.file);
  if (opt.cap > 0) spec.cap = opt.cap;
  if (const char* env = std::getenv("QGT_CAP"); env && spec.cap == 0)
    spec.cap = std::atoi(env);
  return spec;
}

int emit(const Report& rep, const CommonOpts& opt) {
  if (!opt.json_out.empty()) {
    if (opt.json_out == "-") {
      std::cout << rep.to_json();
    } else {
      std::ofstream out(opt.json_out);
      if (!out) {
        std::cerr << "cannot write " << opt.json_out << "\n";
        return 2;
      }
      out << rep.to_json();
    }
  } else {
    std::cout << rep.to_text();
  }
  return rep.all_pass() ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_option("file", opt.file, "spec file")->required();
  cmd->add_option("--json", opt.json_out, "write the JSON report here ('-' for stdout)");
  cmd->add_option("--cap", opt.cap, "override the truncation cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bound quiver algebra workbench"};
  app.require_subcommand(1);

  CommonOpts o_analyze, o_build, o_basis, o_period, o_hat, o_degen, o_check;
  int basis_vertex = 0;
  int period_max = 8;
  std::string hat_weights;
  std::string degen_t;
  std::string check_suite = "all";

  CLI::App* c_analyze = app.add_subcommand("analyze", "quiver shape report");
  add_common(c_analyze, o_analyze);

  CLI::App* c_build = app.add_subcommand("build", "build the algebra and its reports");
  add_common(c_build, o_build);
  c_build->add_flag("--emit-relations", o_build.emit_relations, "list the defining relations");

  CLI::App* c_basis = app.add_subcommand("basis", "basis of one projective");
  add_common(c_basis, o_basis);
  c_basis->add_option("--vertex", basis_vertex, "vertex")->required();

  CLI::App* c_period = app.add_subcommand("period", "periods of the simple modules");
  add_common(c_period, o_period);
  c_period->add_option("--max", period_max, "search bound");

  CLI::App* c_hat = app.add_subcommand("hat", "2-regular extension of a biregular base");
  add_common(c_hat, o_hat);
  c_hat->add_option("--weights", hat_weights, "per-block weights, e.g. m1=2,m'1=3");
  c_hat->add_flag("--emit-relations", o_hat.emit_relations, "list R0/R1/R2");

  CLI::App* c_degen = app.add_subcommand("degenerate", "one-parameter family checks");
  add_common(c_degen, o_degen);
  c_degen->add_option("--t", degen_t, "extra parameter value, exact (e.g. 1/2)");

  CLI::App* c_check = app.add_subcommand("check", "run a verification suite");
  add_common(c_check, o_check);
  c_check->add_option("--suite", check_suite, "analyze|wsa|hat|period|degenerate|all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_analyze->parsed())
      return emit(run_suite(load(o_analyze), Suite::Analyze), o_analyze);
    if (c_build->parsed()) {
      SpecFile spec = load(o_build);
      Suite s = spec.mode == SpecFile::Mode::Base ? Suite::Hat
                : spec.mode == SpecFile::Mode::Triangulation ? Suite::Wsa
                                                             : Suite::Period;
      return emit(run_suite(spec, s, o_build.emit_relations), o_build);
    }
    if (c_basis->parsed()) {
      SpecFile spec = load(o_basis);
      FDAlgebra alg = [&] {
        if (spec.mode == SpecFile::Mode::Triangulation) return build_wsa(spec.to_wsa());
        if (spec.mode == SpecFile::Mode::Base) {
          HatSpec h = spec.to_hat();
          HatStructure hs = hat_quiver(h);
          return build_hat(h, hs);
        }
        return quotient_algebra(spec.quiver, spec.raw_relations, spec.field,
                                spec.cap > 0 ? spec.cap : 12);
      }();
      Report rep;
      rep.body["vertex"] = basis_vertex;
      Json paths = Json::array();
      for (auto n : alg.basis_from(basis_vertex))
        paths.push_back(alg.node_path(n).str());
      rep.body["basis"] = paths;
      rep.body["dim"] = alg.dim_at(basis_vertex);
      return emit(rep, o_basis);
    }
    if (c_period->parsed()) {
      SpecFile spec = load(o_period);
      FDAlgebra alg = [&] {
        if (spec.mode == SpecFile::Mode::Triangulation) return build_wsa(spec.to_wsa());
        if (spec.mode == SpecFile::Mode::Base) {
          HatSpec h = spec.to_hat();
          HatStructure hs = hat_quiver(h);
          return build_hat(h, hs);
        }
        return quotient_algebra(spec.quiver, spec.raw_relations, spec.field,
                                spec.cap > 0 ? spec.cap : 12);
      }();
      Report rep;
      Json pj = Json::object();
      for (int v : alg.quiver().vertices) {
        PeriodResult pr = period_of_simple(alg, v, period_max);
        pj[std::to_string(v)] = pr.period ? Json(*pr.period) : Json(nullptr);
      }
      rep.body["periods"] = pj;
      rep.body["max_steps"] = period_max;
      return emit(rep, o_period);
    }
    if (c_hat->parsed()) {
      SpecFile spec = load(o_hat);
      if (!hat_weights.empty())
        for (auto& kv : parse_hat_weights(hat_weights)) spec.hat_weights.push_back(kv);
      return emit(run_suite(spec, Suite::Hat, o_hat.emit_relations), o_hat);
    }
    if (c_degen->parsed()) {
      SpecFile spec = load(o_degen);
      if (!degen_t.empty()) spec.t = Scalar::parse(spec.field, degen_t);
      return emit(run_suite(spec, Suite::Degenerate), o_degen);
    }
    if (c_check->parsed())
      return emit(run_suite(load(o_check), parse_suite(check_suite)), o_check);
  } catch (const QgtError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
