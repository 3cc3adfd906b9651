// unistab: batch verification runs over finite fields.
//
//   unistab acyclicity --kind iu-proj --q 3 --eps -1 --n 2 --coeff int
//   unistab orbit --q 3 --eps -1 --n 2 --frame "e1;e3"
//   unistab spectral bottom-row --q 3 --n 2 --coeff 5
//
// Exit code 0 on PASS, 1 on FAIL, 2 on refusal or bad usage.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "unistab/cli.hpp"

using namespace unistab;

namespace {

struct Output {
  bool json = false;
  std::string path;
};

void add_common(CLI::App* app, RunConfig& c, Output& out) {
  app->add_option("--q", c.q, "field order (prime power <= 256)");
  app->add_option("--involution", c.involution, "identity or frobenius");
  app->add_option("--eps", c.eps, "-1, 1, or the index of a norm-one unit");
  app->add_option("--n", c.n, "hyperbolic rank, or window size for u kinds");
  app->add_option("--seed", c.seed);
  app->add_option("--budget", c.budget, "maximum simplices per enumeration");
  app->add_option("--threads", c.threads);
  app->add_option("--cache-dir", c.cache_dir, "overrides UNISTAB_CACHE_DIR");
  app->add_flag("--no-cache", c.no_cache);
  app->add_flag("--json", out.json, "print the JSON report instead of the summary");
  app->add_option("--out", out.path, "also write the JSON report to this file");
}

void add_poset(CLI::App* app, RunConfig& c) {
  app->add_option("--kind", c.kind, "u, iu, u-proj, iu-proj, iv or tits");
  app->add_option("--m", c.m, "ambient dimension for u kinds");
  app->add_option("--link", c.link, "link frame, vectors separated by ';'");
  app->add_option("--coeff", c.coeff, "int, Q, or a prime");
  app->add_option_function<int>("--bound", [&c](const int& v) { c.bound = v; }, "claimed acyclicity degree");
  app->add_option_function<int>("--through", [&c](const int& v) { c.through = v; }, "report degrees up to this one");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology and group checks for isotropic frame posets over finite fields"};
  app.require_subcommand(1);
  RunConfig c;
  Output out;
  std::string spectral_sub;

  auto* acyc = app.add_subcommand("acyclicity", "reduced homology of a poset up to a bound");
  add_common(acyc, c, out);
  add_poset(acyc, c);

  auto* genpos = app.add_subcommand("genpos", "search for frames in general position");
  add_common(genpos, c, out);
  genpos->add_option("--frame", c.frames, "input isotropic frame, repeatable");
  genpos->add_option("--random-inputs", c.random_inputs, "number of seeded random inputs");
  genpos->add_option("--frame-size", c.frame_size, "largest random frame size");
  genpos->add_option("--trials", c.trials);
  genpos->add_option("--exhaustive-limit", c.exhaustive_limit);

  auto* orbit = app.add_subcommand("orbit", "orbit of a line frame under the unitary group");
  add_common(orbit, c, out);
  orbit->add_option("--frame", c.frames, "frame, vectors separated by ';'")->required();

  auto* stab = app.add_subcommand("stab", "structure of the stabilizer of the standard p-frame");
  add_common(stab, c, out);
  stab->add_option("--p", c.p);
  stab->add_option("--samples", c.samples);
  stab->add_option("--enumeration-budget", c.enumeration_budget);

  auto* spectral = app.add_subcommand("spectral", "bottom row and related checks");
  spectral->require_subcommand(1);
  for (const char* name : {"bottom-row", "theta", "alpha", "coinvariants", "coprime"}) {
    auto* sub = spectral->add_subcommand(name);
    add_common(sub, c, out);
    sub->add_option("--coeff", c.coeff, "prime of the coefficient field");
    sub->callback([&spectral_sub, name] { spectral_sub = name; });
  }
  spectral->get_subcommand("alpha")->add_option("--samples", c.samples);
  spectral->get_subcommand("coinvariants")->add_option("--weights", c.weights, "comma-separated weights");
  spectral->get_subcommand("coinvariants")
      ->add_option_function<std::uint64_t>("--basis-seed", [&c](const std::uint64_t& v) { c.basis_seed = v; });
  auto* coprime = spectral->get_subcommand("coprime");
  coprime->add_option("--group-prime", c.group_prime);
  coprime->add_option("--group-rank", c.group_rank);
  coprime->add_option("--max-degree", c.max_degree);

  auto* h1 = app.add_subcommand("h1", "first homology of the groups and its stabilization");
  add_common(h1, c, out);
  h1->add_option("--coeff", c.coeff, "prime of the coefficient field");
  h1->add_option("--max-n", c.max_n);

  auto* dump = app.add_subcommand("dump", "sparse boundary matrix of one degree");
  add_common(dump, c, out);
  add_poset(dump, c);
  dump->add_option_function<int>("--degree", [&c](const int& v) { c.degree = v; })->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report r;
  std::ostringstream matrix;
  if (acyc->parsed()) {
    r = run_guarded("acyclicity", c, [&] { return cmd_acyclicity(c); });
  } else if (genpos->parsed()) {
    r = run_guarded("genpos", c, [&] { return cmd_genpos(c); });
  } else if (orbit->parsed()) {
    r = run_guarded("orbit", c, [&] { return cmd_orbit(c); });
  } else if (stab->parsed()) {
    r = run_guarded("stab", c, [&] { return cmd_stab(c); });
  } else if (spectral->parsed()) {
    r = run_guarded("spectral " + spectral_sub, c, [&] { return cmd_spectral(spectral_sub, c); });
  } else if (h1->parsed()) {
    r = run_guarded("h1", c, [&] { return cmd_h1(c); });
  } else if (dump->parsed()) {
    r = run_guarded("dump", c, [&] { return cmd_dump(c, matrix); });
    // the matrix goes to stdout, the report to --out if given
    std::cout << matrix.str();
    if (!out.path.empty()) write_atomically(out.path, r.to_json().dump(2) + "\n");
    if (r.verdict == "REFUSED") std::cerr << r.message << "\n";
    return r.exit_code();
  }

  const std::string json_text = r.to_json().dump(2) + "\n";
  if (!out.path.empty()) {
    try {
      write_atomically(out.path, json_text);
    } catch (const std::exception& e) {
      std::cerr << "cannot write report: " << e.what() << "\n";
      return 2;
    }
  }
  std::cout << (out.json ? json_text : r.summary());
  if (r.verdict == "REFUSED") std::cerr << r.message << "\n";
  return r.exit_code();
}
