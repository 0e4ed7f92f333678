// Prints every cluster of the exchange graph reachable from a quiver file,
// with its g-dagger vectors and (optionally) its cluster variables.
//
//   exchange_graph samples/a3.json 10 --oracle

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qlab/qlab.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: exchange_graph QUIVER.json [DEPTH] [--oracle]\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  std::stringstream text;
  text << in.rdbuf();
  const auto b0 = qlab::read_quiver(text.str());
  const std::size_t depth = argc > 2 ? std::stoul(argv[2]) : 8;
  const bool oracle = argc > 3 && std::string(argv[3]) == "--oracle";

  const auto graph = qlab::enumerate(b0, {depth, oracle});
  for (const auto& node : graph.nodes) {
    std::cout << "[" << node.path.to_string() << "]";
    for (std::size_t l = 0; l < node.cluster.size(); ++l) {
      std::cout << ' ' << qlab::to_json_text(node.cluster[l]);
      if (!node.variables.empty()) std::cout << '=' << node.variables[l].to_string();
    }
    std::cout << '\n';
  }
  std::cout << graph.clusters() << " clusters, " << graph.distinct_g_vectors << " g-vectors, "
            << (graph.closed ? "closed" : "open") << '\n';
}
