#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "quillen/dgl.hpp"
#include "quillen/lie_expr.hpp"
#include "quillen/model_file.hpp"

namespace testing_support {

inline oracle::Element to_oracle(const quillen::Tensor& t) {
  oracle::Element out;
  for (const auto& [w, c] : t.terms()) out[oracle::Word(w.begin(), w.end())] = c;
  return out;
}

inline std::vector<int> degrees_of(const quillen::Dgl& l) {
  return std::vector<int>(l.degrees().begin(), l.degrees().end());
}

inline std::vector<oracle::Element> differentials_of(const quillen::Dgl& l) {
  std::vector<oracle::Element> out;
  for (const auto& t : l.differentials()) out.push_back(to_oracle(t));
  return out;
}

/// Builds a dgl from (id, degree, differential text) triples.
inline quillen::DglPtr make_dgl(const std::string& name,
                                const std::vector<std::tuple<std::string, int, std::string>>& gens) {
  quillen::Dgl l(name);
  for (const auto& [id, deg, diff] : gens) {
    const quillen::Letter g = l.add_generator(id, deg);
    if (!diff.empty()) l.set_differential(g, quillen::expand(quillen::parse_lie(diff, l.generators()), l.degrees()));
  }
  return std::make_shared<const quillen::Dgl>(std::move(l));
}

inline quillen::DglPtr sphere2() { return make_dgl("S2", {{"x", 1, ""}}); }
inline quillen::DglPtr sphere3() { return make_dgl("S3", {{"w", 2, ""}}); }
inline quillen::DglPtr cp2() { return make_dgl("CP2", {{"x", 1, ""}, {"y", 3, "[x,x]"}}); }
inline quillen::DglPtr s3xs3() { return make_dgl("S3xS3", {{"v", 2, ""}, {"w", 2, ""}, {"s", 5, "[v,w]"}}); }
inline quillen::DglPtr point() { return make_dgl("point", {}); }

inline quillen::Tensor tensor(const quillen::Dgl& l, const std::string& text) {
  return quillen::expand(quillen::parse_lie(text, l.generators()), l.degrees());
}

inline std::string models_dir() { return QUILLEN_MODELS_DIR; }

}  // namespace testing_support
