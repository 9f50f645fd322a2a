// Copyright 2026 The qdouble Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "qdouble/qdouble.hpp"

namespace {

using namespace qdouble;

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string group;
  std::string size = "2x2";
  std::string anyon;
  int n = 2;
  std::string export_path;
  std::string dump_path;
  std::uint64_t seed = 0;
  std::optional<double> tol;
};

GroupPtr load_group(const std::string& spec) {
  try {
    return build_group(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::pair<int, int> parse_size(const std::string& s) {
  static const std::regex re(R"((\d+)[xX](\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw UsageError("--size must look like WxH, got '" + s + "'");
  const int w = std::stoi(m[1]), h = std::stoi(m[2]);
  if (w < 2 || h < 2) throw UsageError("torus sides must be at least 2");
  return {w, h};
}

std::string fmt(Cplx z) {
  z = chop(z, 1e-12);
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.6g", z.real() == 0.0 ? 0.0 : z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  }
  return buf;
}

void print_matrix(const CMatrix& m, const std::string& indent = "  ") {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::cout << indent;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::string s = fmt(m(r, c));
      std::cout << (c ? " " : "") << std::string(s.size() < 14 ? 14 - s.size() : 0, ' ') << s;
    }
    std::cout << "\n";
  }
}

int cmd_anyons(const RunConfig& cfg) {
  const double tol = cfg.tol.value_or(1e-8);
  QuantumDouble qd(load_group(cfg.group), cfg.seed);
  const FusionTable ft = fusion_table(qd);
  const SMatrix s = s_matrix(qd);
  const TMatrix t = t_matrix(qd);
  const VerlindeReport vr = verlinde_check(s, ft);
  const ModularityReport mr = modularity_check(qd, s, t, std::nullopt, tol);

  std::cout << "group " << qd.group().name() << ", order " << qd.group().order() << ", " << qd.num_anyons()
            << " anyons\n\n";
  std::printf("  %3s  %-28s %4s  %s\n", "#", "label", "dim", "twist");
  for (int a = 0; a < qd.num_anyons(); ++a)
    std::printf("  %3d  %-28s %4d  %s\n", a, ft.labels[a].c_str(), qd.irrep(a).dim, fmt(t.theta[a]).c_str());
  std::cout << "\nfusion rules\n";
  for (int i = 0; i < ft.size(); ++i)
    for (int j = i; j < ft.size(); ++j) {
      std::string rhs;
      for (int k = 0; k < ft.size(); ++k)
        if (ft(i, j, k)) rhs += (rhs.empty() ? "" : " + ") + (ft(i, j, k) > 1 ? std::to_string(ft(i, j, k)) + " " : "") +
                                ft.labels[k];
      std::cout << "  " << ft.labels[i] << " x " << ft.labels[j] << " = " << rhs << "\n";
    }
  std::cout << "\nS (normalized by D = " << s.D << ")\n";
  print_matrix(s.normalized);
  std::printf("\nverlinde residual        %.3e\n", vr.residual);
  std::printf("verlinde (printed form)  %.3e  (reference only)\n", vr.printed_residual);
  std::printf("S unitarity residual     %.3e\n", mr.unitarity_residual);
  std::printf("(S T^-1)^3 ~ S^2         %.3e\n", mr.st_inverse_residual);
  std::cout << "modular: " << (mr.modular ? "true" : "false") << "\n";

  if (!cfg.export_path.empty()) {
    write_text(cfg.export_path, to_text(anyon_model_json(qd)));
    std::cout << "wrote " << cfg.export_path << "\n";
  }
  return vr.residual < tol && mr.modular ? kPass : kFail;
}

int cmd_lattice_verify(const RunConfig& cfg) {
  const auto [w, h] = parse_size(cfg.size);
  GroupPtr g = load_group(cfg.group);
  LatticeModel m(g, TorusLattice(w, h));
  m.register_size();  // guard before any allocation
  QuantumDouble qd(g, cfg.seed);
  SuiteOptions opt;
  opt.seed = cfg.seed;
  if (cfg.tol) opt.tol = *cfg.tol;
  VerificationReport rep = lattice_suite(m, qd, opt);
  VerificationReport ground = ground_suite(m, cfg.tol.value_or(1e-12));
  ground.run("ground/dimension", 0.5, [&] {
    return std::abs(static_cast<double>(ground_space_dim(m, cfg.seed) - qd.num_anyons()));
  });
  rep.merge(ground);
  std::cout << rep.format();
  if (!cfg.dump_path.empty()) {
    ground_state(m).dump(cfg.dump_path);
    std::cout << "wrote " << cfg.dump_path << "\n";
  }
  return rep.pass() ? kPass : kFail;
}

int cmd_braid(const RunConfig& cfg) {
  const double tol = cfg.tol.value_or(1e-9);
  QuantumDouble qd(load_group(cfg.group), cfg.seed);
  if (cfg.anyon.empty()) throw UsageError("braid needs --anyon");
  if (cfg.n < 0) throw UsageError("--n must be non-negative");
  int a = 0;
  try {
    a = qd.parse_label(cfg.anyon);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const BraidRep rep = braid_rep(qd, a, cfg.n);
  const std::string name = qd.anyons()[a].name;
  if (rep.space.dim() == 0) {
    std::cout << "fusion space is 0-dimensional for " << name << " with n = " << cfg.n << "\n";
    return kPass;
  }
  std::cout << "Hom(vacuum, " << name << "^" << cfg.n << ") has dimension " << rep.space.dim() << "\n";
  for (std::size_t i = 0; i < rep.generators.size(); ++i) {
    std::cout << "\nb_" << i + 1 << "\n";
    print_matrix(rep.generators[i]);
  }
  const double u = rep.unitarity_residual(), b = rep.braid_relation_residual(), f = rep.far_commutation_residual();
  std::printf("\nunitarity residual        %.3e\n", u);
  std::printf("braid relation residual   %.3e\n", b);
  std::printf("far commutation residual  %.3e\n", f);
  if (!cfg.export_path.empty()) {
    write_text(cfg.export_path, to_text(braid_json(qd, rep)));
    std::cout << "wrote " << cfg.export_path << "\n";
  }
  return std::max({u, b, f}) <= tol ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdouble: anyons of the quantum double D(G) and their lattice realization"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "Z<n>, S<n>, D<n>, Q8, or permutation generators")->required();
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--tol", cfg.tol, "tolerance override");
  };
  auto* anyons = app.add_subcommand("anyons", "anyon table, fusion, S and T, modularity");
  common(anyons);
  anyons->add_option("--export", cfg.export_path, "write the anyon model as JSON");
  auto* verify = app.add_subcommand("lattice-verify", "relation suite on a torus");
  common(verify);
  verify->add_option("--size", cfg.size, "torus size WxH");
  verify->add_option("--dump", cfg.dump_path, "write the ground state as raw complex64");
  auto* braid = app.add_subcommand("braid", "braid group representation on Hom(vacuum, a^n)");
  braid->alias("braid-rep");
  common(braid);
  braid->add_option("--anyon", cfg.anyon, "vacuum, charge:<i>, flux:<class>, dyon:<class>:<i>")->required();
  braid->add_option("--n", cfg.n, "number of strands");
  braid->add_option("--export", cfg.export_path, "write generators as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    if (*anyons) return cmd_anyons(cfg);
    if (*verify) return cmd_lattice_verify(cfg);
    return cmd_braid(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
