// Command line front end.  Reads a JSON manifest, runs one of the commands,
// prints a human-readable report, optionally writes the JSON form, and exits
// 0 / 1 / 2 for pass / claim failure / rejected inputs.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "koszul/cli.hpp"

namespace {

int finish(const koszul::Report& r, const std::string& json_path) {
  std::cout << koszul::report_text(r);
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 2;
    }
    out << koszul::report_json(r).dump(2) << "\n";
  }
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for Koszul complexes and their endomorphism algebras"};
  app.require_subcommand(1);

  std::string manifest_path, json_path, theorem;
  std::uint64_t seed = 0;
  int max_order = 0;
  app.add_option("--manifest", manifest_path, "path to a JSON manifest")->required();
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--json", json_path, "write the report as JSON to this path");
  app.add_option("--max-order", max_order, "cap the lifting order for deform and descent");
  app.add_option("--theorem", theorem,
                 "certification target: nha-koszul | nha-truncated | not-homotopy-abelian | "
                 "example-1-6 | local-to-global");

  CLI::App* c_koszul = app.add_subcommand("koszul", "build the complex and certify its shape");
  CLI::App* c_certify = app.add_subcommand("certify", "run a certification suite end to end");
  CLI::App* c_deform = app.add_subcommand("deform", "solve deformation equations over the Artin ring");
  for (CLI::App* sub : {c_koszul, c_certify, c_deform}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(manifest_path);
  if (!in) {
    std::cerr << "cannot read " << manifest_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  koszul::Manifest m;
  try {
    m = koszul::parse_manifest(buf.str());
  } catch (const koszul::ManifestError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (max_order > 0) m.max_order = max_order;

  if (c_koszul->parsed()) return finish(koszul::cmd_koszul(m, seed), json_path);
  if (c_certify->parsed()) {
    if (theorem.empty()) {
      std::cerr << "certify needs --theorem\n";
      return 2;
    }
    return finish(koszul::cmd_certify(m, theorem, seed), json_path);
  }
  return finish(koszul::cmd_deform(m, seed), json_path);
}
