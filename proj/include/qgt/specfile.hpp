#pragma once

#include "qgt/hat.hpp"

namespace qgt {

// Declarative input: a quiver (explicit or assembled from blocks), the cycle
// data, weights, parameters, and options. Line-oriented; '#' starts a comment.
struct SpecFile {
  enum class Mode { Triangulation, Base, Raw };

  Field field = Field::rationals();
  Mode mode = Mode::Raw;
  Quiver quiver;
  std::map<std::string, std::string> f;  // triangulation mode, total
  std::map<std::string, std::string> g;  // base mode, total
  std::map<std::string, int> weights;    // as given, keyed per arrow
  std::map<std::string, Scalar> params;
  std::map<int, Scalar> border;
  std::vector<std::pair<std::string, int>> hat_weights;  // ("m1", 2) / ("m'1", 3)
  std::vector<PathExpr> raw_relations;
  int cap = 0;
  std::optional<Scalar> t;

  bool from_blocks = false;
  std::vector<BlockSpec> block_specs;
  std::vector<GluePair> glue_pairs;

  WSASpec to_wsa() const;  // Triangulation mode
  HatSpec to_hat() const;  // Base mode; hat weights resolved against blocks
};

SpecFile parse_spec(const std::string& text);
SpecFile parse_spec_file(const std::string& path);
std::string print_spec(const SpecFile& s);

PathExpr parse_path_expr(const std::string& text, const Field& field);

// Expands per-orbit weight/parameter keys to every arrow of the orbit.
std::map<std::string, int> expand_weights(const std::map<std::string, std::string>& g,
                                          const std::map<std::string, int>& given);
std::map<std::string, Scalar> expand_params(const std::map<std::string, std::string>& g,
                                            const std::map<std::string, Scalar>& given);

// Parses "m1=2,m'1=3" style hat-weight lists.
std::vector<std::pair<std::string, int>> parse_hat_weights(const std::string& text);

}  // namespace qgt
