#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cohnpath/dsl.hpp"
#include "cohnpath/graph.hpp"

namespace cohnpath::testing {

inline std::string data_path(const std::string& name) {
  return std::string(COHNPATH_DATA_DIR) + "/" + name;
}

inline GraphPtr fixture(const std::string& name) {
  return std::make_shared<Graph>(load_graph_file(data_path(name + ".graph")));
}

/// All shipped fixtures, in file-name order.
inline std::vector<std::string> fixture_names() {
  return {"G1", "G2", "G2cohn", "G3", "G4", "G5p", "G5pp", "G6"};
}

}  // namespace cohnpath::testing
