#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "twoedge/run.hpp"

namespace {

std::string read_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spectra, leaning statistics and Wigner functions of two-edge quantum graphs"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir, format;
  unsigned threads = 0;
  bool threads_set = false;
  for (const auto &[task, name] : twoedge::kTaskNames) {
    auto *sub = app.add_subcommand(std::string(name), "run the " + std::string(name) + " task");
    sub->add_option("--config", config_path, "JSON run description")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--format", format, "csv or json (overrides the config)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "worker threads, 0 = all cores")
        ->each([&](const std::string &) { threads_set = true; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    twoedge::RunConfig cfg = twoedge::parse_config(read_file(config_path));
    const auto task = twoedge::task_from_name(name);
    if (cfg.task && cfg.task != task)
      throw twoedge::ValidationError("task", "config asks for '" + std::string(twoedge::task_name(*cfg.task)) +
                                                 "', command line for '" + name + "'");
    cfg.task = task;
    if (!out_dir.empty()) cfg.output = out_dir;
    if (!format.empty()) cfg.format = format == "json" ? twoedge::OutputFormat::json : twoedge::OutputFormat::csv;
    if (threads_set) cfg.threads = threads;

    const twoedge::RunResult res = twoedge::compute(cfg);
    twoedge::write_outputs(res.files, cfg.output);
    for (const auto &f : res.files) std::cout << (std::filesystem::path(cfg.output) / f.name).string() << '\n';
    if (res.status != 0) std::cerr << res.message << '\n';
    return res.status;
  } catch (const std::exception &e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
