// qlab: command-line front end for quiver mutation, g-dagger vectors, the
// principal-coefficient oracle, the verifier suites and the session server.
//
// Exit codes: 0 success, 1 failed check, 2 malformed input, 3 unknown vertex.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qlab/http.hpp"
#include "qlab/qlab.hpp"
#include "qlab/service.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitUnknownVertex = 3;

qlab::SkewMatrix load_quiver(const std::string& file) {
  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(file);
    if (!in) throw qlab::FormatError("cannot read '" + file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  return qlab::read_quiver(text);
}

int cmd_mutate(const std::string& file, const std::string& k) {
  const auto b = load_quiver(file);
  std::cout << qlab::write_quiver(qlab::mutate(b, k)) << '\n';
  return 0;
}

int cmd_gvec(const std::string& file, const std::string& path_text, const std::string& label,
             bool all) {
  const auto b = load_quiver(file);
  const auto path = qlab::MutationPath::parse(path_text);
  if (all) {
    const auto cluster = qlab::g_dagger_cluster(b, path);
    qlab::OrderedJson out = qlab::OrderedJson::array();
    for (const auto& g : cluster.vectors) out.push_back(g.coords());
    std::cout << out.dump() << '\n';
  } else {
    std::cout << qlab::to_json_text(qlab::g_dagger_vector(b, path, label)) << '\n';
  }
  return 0;
}

int cmd_oracle(const std::string& file, const std::string& path_text, const std::string& label,
               bool check_g) {
  const auto b = load_quiver(file);
  const auto path = qlab::MutationPath::parse(path_text);
  const qlab::PrincipalOracle oracle(b);
  const auto x = oracle.cluster_variable(path, label);
  const auto g = qlab::degree(x, oracle.grading());
  std::cout << x.to_string() << '\n' << "g=" << qlab::to_json_text(g) << '\n';
  if (!check_g) return 0;
  const auto gd = qlab::g_dagger_vector(b, path, label);
  if (gd == g) {
    std::cout << "check-g: ok\n";
    return 0;
  }
  std::cout << "check-g: mismatch, g_dagger=" << qlab::to_json_text(gd) << '\n';
  return kExitCheckFailed;
}

int cmd_verify(const std::string& file, const std::string& suite, qlab::VerifyOptions opt) {
  const auto b = load_quiver(file);
  const bool all = suite == "all";
  opt.sign = all || suite == "sign";
  opt.basis = all || suite == "basis";
  opt.inject = all || suite == "inject";
  opt.transform = all || suite == "transform";
  const auto outcome = qlab::run_verify(b, opt);
  std::cout << outcome.report.dump(2) << '\n';
  return outcome.ok ? 0 : kExitCheckFailed;
}

int cmd_serve(std::string host, int port, const std::string& snapshot_dir) {
  auto config = qlab::ServiceConfig::from_env();
  if (!snapshot_dir.empty()) config.snapshot_dir = snapshot_dir;
  qlab::SessionService service(config);
  httplib::Server server;
  qlab::mount_routes(server, service);
  std::cerr << "qlab: serving on http://" << host << ':' << port << " (oracle limit n <= "
            << config.oracle_max_n << ")\n";
  if (!server.listen(host, port)) {
    std::cerr << "qlab: cannot listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

int default_port() {
  if (const char* v = std::getenv("QLAB_PORT")) return std::atoi(v);
  return 8080;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlab: quiver mutation and g-dagger vector toolkit"};
  app.require_subcommand(1);

  std::string file, k, path_text, label, suite = "all", snapshot_dir, host = "127.0.0.1";
  bool all = false, check_g = false;
  int port = default_port();
  qlab::VerifyOptions verify_opt;

  auto* mutate = app.add_subcommand("mutate", "Mutate a quiver at one vertex");
  mutate->add_option("file", file, "qlab-quiver-v1 file ('-' for stdin)")->required();
  mutate->add_option("-k,--vertex", k, "Vertex label")->required();

  auto* gvec = app.add_subcommand("gvec", "g-dagger vector(s) at the end of a mutation path");
  gvec->add_option("file", file, "qlab-quiver-v1 file ('-' for stdin)")->required();
  gvec->add_option("-p,--path", path_text, "Comma-separated labels, e.g. 1,2,1");
  auto* gvec_label = gvec->add_option("-l,--label", label, "Slot label");
  auto* gvec_all = gvec->add_flag("--all", all, "Whole g-dagger cluster in slot order");
  gvec_label->excludes(gvec_all);
  gvec_all->excludes(gvec_label);

  auto* verify = app.add_subcommand("verify", "Run verifier suites and print a qlab-report-v1");
  verify->add_option("file", file, "qlab-quiver-v1 file ('-' for stdin)")->required();
  verify->add_option("--suite", suite, "sign|basis|inject|transform|all")
      ->check(CLI::IsMember({"sign", "basis", "inject", "transform", "all"}));
  verify->add_option("--depth", verify_opt.depth, "Enumeration depth")->capture_default_str();
  verify->add_option("--samples", verify_opt.transform_samples, "Transform samples per vertex")
      ->capture_default_str();
  verify->add_option("--max-length", verify_opt.transform_max_length,
                     "Longest sampled transform path")
      ->capture_default_str();
  verify->add_option("--seed", verify_opt.transform_seed, "Sampling seed")->capture_default_str();
  verify->add_flag("--inject-fault", verify_opt.inject_fault,
                   "Disable the minus branch of phi (fault-injection run)");

  auto* oracle = app.add_subcommand("oracle", "Cluster variable with principal coefficients");
  oracle->add_option("file", file, "qlab-quiver-v1 file ('-' for stdin)")->required();
  oracle->add_option("-p,--path", path_text, "Comma-separated labels");
  oracle->add_option("-l,--label", label, "Slot label")->required();
  oracle->add_flag("--check-g", check_g, "Also check agreement with the g-dagger vector");

  auto* serve = app.add_subcommand("serve", "HTTP session API for the explorer UI");
  serve->add_option("--port", port, "Port (default $QLAB_PORT or 8080)");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--snapshot-dir", snapshot_dir, "Persist sessions as JSON files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitMalformed;
  }

  try {
    if (*mutate) return cmd_mutate(file, k);
    if (*gvec) {
      if (!all && label.empty()) {
        std::cerr << "qlab gvec: need -l LABEL or --all\n";
        return kExitMalformed;
      }
      return cmd_gvec(file, path_text, label, all);
    }
    if (*verify) return cmd_verify(file, suite, verify_opt);
    if (*oracle) return cmd_oracle(file, path_text, label, check_g);
    if (*serve) return cmd_serve(host, port, snapshot_dir);
  } catch (const qlab::UnknownVertex& e) {
    std::cerr << "qlab: " << e.what() << '\n';
    return kExitUnknownVertex;
  } catch (const qlab::FormatError& e) {
    std::cerr << "qlab: malformed input: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const qlab::Error& e) {
    std::cerr << "qlab: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return 0;
}
