#include "tisim/cli.hpp"

#include <iostream>

#include "CLI11.hpp"

namespace {

struct Options {
  tisim::RunConfig cfg;
  std::string p_ann_text;
};

void add_common(CLI::App* sub, Options& o, bool circuit_required) {
  auto* b = sub->add_option("--builtin", o.cfg.builtin_name, "built-in circuit name")
                ->check(CLI::IsMember(tisim::builtin_names()));
  auto* f = sub->add_option("--file", o.cfg.file, "circuit description file");
  b->excludes(f);
  f->excludes(b);
  if (circuit_required) {
    sub->callback([&o, sub] {
      if (o.cfg.builtin_name.empty() && o.cfg.file.empty())
        throw CLI::RequiredError(sub->get_name() + " requires --builtin or --file");
    });
  }
  sub->add_option("--p-ann", o.p_ann_text,
                  "override every interaction region's p_ann (p/q or integer)");
  sub->add_option("--engine", o.cfg.engine, "amplitude arithmetic")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  sub->add_option("--format", o.cfg.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
}

int apply_p_ann(Options& o) {
  if (o.p_ann_text.empty()) return 0;
  try {
    o.cfg.p_ann = tisim::parse_rational(o.p_ann_text);
  } catch (const std::exception& e) {
    std::cerr << "error: bad --p-ann value: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tisim: transactional-interpretation interferometer simulator"};
  app.require_subcommand(1);

  Options exact_o, run_o, trace_o, validate_o;

  auto* exact = app.add_subcommand("exact", "exact outcome weights");
  add_common(exact, exact_o, true);

  auto* run = app.add_subcommand("run", "Monte Carlo trials against the exact weights");
  add_common(run, run_o, true);
  run->add_option("--trials", run_o.cfg.trials, "number of trials")
      ->check(CLI::Range(std::uint64_t(1), std::uint64_t(1) << 62))
      ->capture_default_str();
  run->add_option("--seed", run_o.cfg.seed, "RNG seed")->capture_default_str();

  auto* trace = app.add_subcommand("trace", "offer/confirmation amplitudes and cut states");
  add_common(trace, trace_o, true);

  auto* validate = app.add_subcommand("validate", "structural diagnostics for a circuit");
  add_common(validate, validate_o, false);
  std::string validate_path;
  validate->add_option("path", validate_path, "circuit description file");
  validate->callback([&] {
    if (!validate_path.empty()) {
      if (!validate_o.cfg.file.empty() || !validate_o.cfg.builtin_name.empty())
        throw CLI::ValidationError("give either a positional path or --file/--builtin");
      validate_o.cfg.file = validate_path;
    }
    if (validate_o.cfg.file.empty() && validate_o.cfg.builtin_name.empty())
      throw CLI::RequiredError("validate requires a path, --file, or --builtin");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the diagnostic
    return 2;
  }

  if (exact->parsed()) {
    if (int rc = apply_p_ann(exact_o)) return rc;
    return tisim::cmd_exact(exact_o.cfg, std::cout, std::cerr);
  }
  if (run->parsed()) {
    if (int rc = apply_p_ann(run_o)) return rc;
    return tisim::cmd_run(run_o.cfg, std::cout, std::cerr);
  }
  if (trace->parsed()) {
    if (int rc = apply_p_ann(trace_o)) return rc;
    return tisim::cmd_trace(trace_o.cfg, std::cout, std::cerr);
  }
  if (validate->parsed()) {
    if (int rc = apply_p_ann(validate_o)) return rc;
    return tisim::cmd_validate(validate_o.cfg, std::cout, std::cerr);
  }
  return 1;
}
