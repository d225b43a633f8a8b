// wfconf: conformance checking of .wfm process models against a reference.
//
//   wfconf -c Concrete.wfm -r Reference.wfm -m ref [--output text|json]
//   wfconf traces Model.wfm [-k 2]
//   wfconf corpus data/corpus/manifest.ini

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfconf/wfconf.hpp"

namespace {

constexpr int kUsageError = 3;

// Older invocations spell the flags `-i` and `-ref`.
std::vector<std::string> rewrite_legacy_flags(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-i") {
      std::cerr << "warning: -i is deprecated, use -c/--concrete\n";
      a = "-c";
    } else if (a == "-ref") {
      std::cerr << "warning: -ref is deprecated, use -r/--reference\n";
      a = "-r";
    }
    args.push_back(std::move(a));
  }
  return args;
}

wfconf::ProcessModel load(const std::string& path) {
  auto model = wfconf::load_model(path);
  wfconf::require_valid(model);
  return model;
}

int run_check(const std::string& concrete_path, const std::string& reference_path, const std::string& mapping,
              const std::string& output) {
  auto concrete = load(concrete_path);
  auto reference = load(reference_path);
  auto report = wfconf::check_conformance(concrete, reference, mapping);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << (output == "json" ? wfconf::render_json(report) : wfconf::render_text(report));
  return wfconf::exit_code(report);
}

int run_traces(const std::string& path, std::size_t bound, const std::string& output) {
  auto model = load(path);
  auto result = wfconf::enumerate_traces(model, bound);
  if (output == "json") {
    nlohmann::json j = {{"model", model.name()},
                        {"bound", bound},
                        {"traces", result.traces},
                        {"deadlocked", result.deadlocked},
                        {"bounded", result.bounded}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& t : result.traces) std::cout << wfconf::bracketed(t) << "\n";
    std::cerr << result.traces.size() << " traces, " << result.deadlocked << " deadlocked runs, " << result.bounded
              << " runs cut at bound " << bound << "\n";
  }
  return 0;
}

int run_corpus(const std::string& manifest) {
  int failures = 0;
  for (const auto& c : wfconf::load_corpus(manifest)) {
    auto concrete = load(c.concrete.string());
    auto reference = load(c.reference.string());
    auto report = wfconf::check_conformance(concrete, reference, c.mapping);
    auto nodes = report.overall == wfconf::Status::NotConform ? report.non_conforming() : report.undecided();
    bool ok = report.overall == c.expect && (c.expect_nodes.empty() || nodes == c.expect_nodes);
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << ": " << to_string(report.overall) << " (expected "
              << to_string(c.expect) << ")";
    if (!nodes.empty()) std::cout << " " << wfconf::bracketed(nodes);
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformance checking of process models against a reference model"};
  app.require_subcommand(0, 1);

  std::string concrete, reference, mapping, output = "text";
  app.add_option("-c,--concrete", concrete, "concrete model (.wfm)");
  app.add_option("-r,--reference", reference, "reference model (.wfm)");
  app.add_option("-m,--mapping", mapping, "incarnation mapping name");
  app.add_option("--output", output, "report format")->check(CLI::IsMember({"text", "json"}));

  auto* traces = app.add_subcommand("traces", "enumerate bounded token-game traces of a model");
  std::string trace_model;
  std::size_t bound = 2;
  traces->add_option("model", trace_model, "model (.wfm)")->required();
  traces->add_option("-k,--bound", bound, "maximum firings per node")->check(CLI::PositiveNumber);
  traces->add_option("--output", output, "output format")->check(CLI::IsMember({"text", "json"}));

  auto* corpus = app.add_subcommand("corpus", "run every case of a fixture manifest");
  std::string manifest;
  corpus->add_option("manifest", manifest, "manifest file")->required();

  auto args = rewrite_legacy_flags(argc, argv);
  std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 consumes from the back
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*traces) return run_traces(trace_model, bound, output);
    if (*corpus) return run_corpus(manifest);
    if (concrete.empty() || reference.empty() || mapping.empty()) {
      std::cerr << "error: -c/--concrete, -r/--reference and -m/--mapping are required\n" << app.help();
      return kUsageError;
    }
    return run_check(concrete, reference, mapping, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
