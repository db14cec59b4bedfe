#include "onebit/serialize.hpp"

#include <string>
#include <vector>

#include "onebit/errors.hpp"

namespace onebit {

using nlohmann::json;

const char* to_string(EnsembleKind kind) {
  return kind == EnsembleKind::Gaussian ? "gaussian" : "uniform_sphere";
}

const char* to_string(WidthMethod method) {
  switch (method) {
    case WidthMethod::GaussianWidth:
      return "gaussian_width";
    case WidthMethod::HemisphereCholesky:
      return "hemisphere_cholesky";
    case WidthMethod::HemisphereEmpirical:
      return "hemisphere_empirical";
  }
  return "";
}

const char* to_string(ProcessMetric metric) {
  return metric == ProcessMetric::GaussianMetric ? "gaussian" : "hemisphere";
}

const char* to_string(SetClass set_class) { return set_class == SetClass::Hemispheres ? "hemispheres" : "wedges"; }

const char* to_string(PointSource source) {
  switch (source) {
    case PointSource::Explicit:
      return "explicit";
    case PointSource::UniformSample:
      return "uniform_sample";
    case PointSource::SparseSample:
      return "sparse_sample";
    case PointSource::ConvexSparseSample:
      return "convex_sparse_sample";
    case PointSource::Packing:
      return "packing";
  }
  return "";
}

void to_json(json& j, const UnitVector& x) {
  j = json::array();
  for (int i = 0; i < x.dim(); ++i) j.push_back(x[i]);
}

void to_json(json& j, const PointSet& points) {
  j = json{{"source", to_string(points.source())}, {"points", points.points()}};
}

void to_json(json& j, const SignPattern& p) { j = p.to_string(); }

void from_json(const json& j, SignPattern& p) { p = SignPattern::parse(j.get<std::string>()); }

json ensemble_to_json(const MeasurementEnsemble& ens) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < ens.directions().rows(); ++r) {
    std::vector<double> row(ens.directions().row(r).begin(), ens.directions().row(r).end());
    rows.push_back(row);
  }
  return json{{"kind", to_string(ens.kind())},
              {"seed", ens.seed()},
              {"m", ens.size()},
              {"dim", ens.dim()},
              {"directions", rows}};
}

MeasurementEnsemble ensemble_from_json(const json& j) {
  try {
    const auto kind_name = j.at("kind").get<std::string>();
    EnsembleKind kind;
    if (kind_name == "gaussian") {
      kind = EnsembleKind::Gaussian;
    } else if (kind_name == "uniform_sphere") {
      kind = EnsembleKind::UniformSphere;
    } else {
      throw InvalidArgument("unknown ensemble kind '" + kind_name + "'");
    }
    const auto m = j.at("m").get<std::size_t>();
    const auto dim = j.at("dim").get<int>();
    if (dim < 2) throw InvalidArgument("ensemble 'dim' must be at least 2");
    const auto& rows = j.at("directions");
    if (rows.size() != m) throw InvalidArgument("ensemble 'm' does not match the number of directions");
    Eigen::MatrixXd dirs(static_cast<Eigen::Index>(m), dim);
    for (std::size_t r = 0; r < m; ++r) {
      const auto row = rows[r].get<std::vector<double>>();
      if (row.size() != static_cast<std::size_t>(dim)) throw InvalidArgument("ensemble direction of wrong length");
      for (int c = 0; c < dim; ++c) dirs(static_cast<Eigen::Index>(r), c) = row[static_cast<std::size_t>(c)];
    }
    return MeasurementEnsemble(std::move(dirs), kind, j.at("seed").get<std::uint64_t>());
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed ensemble document: ") + e.what());
  }
}

void to_json(json& j, const NetReport& r) {
  j = json{{"delta", r.delta},
           {"packing_size", r.packing_size},
           {"covering_size", r.covering_size},
           {"center_indices", r.center_indices}};
}

void to_json(json& j, const CapacityReport& r) {
  j = json{{"delta", r.delta},
           {"packing_at_2delta", r.packing_at_2delta},
           {"covering", r.covering},
           {"packing_at_delta", r.packing_at_delta},
           {"holds", r.holds()}};
}

void to_json(json& j, const EntropyRatio& r) {
  j = json{{"delta", r.delta},
           {"covering", r.covering},
           {"scaled_entropy", r.scaled_entropy},
           {"sparsity_scale", r.sparsity_scale},
           {"ratio", r.ratio}};
}

void to_json(json& j, const VcReport& r) {
  j = json{{"n", r.n},
           {"points", r.witness_points.size()},
           {"shattered", r.shattered},
           {"dichotomies_realized", r.dichotomies_realized},
           {"dichotomies_total", r.dichotomies_total},
           {"sauer_bound", r.sauer_bound ? json(*r.sauer_bound) : json(nullptr)}};
}

void to_json(json& j, const VcEntropyReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"delta", row.delta},
                        {"covering_number", row.covering_number},
                        {"bound", row.bound},
                        {"ratio", row.ratio}});
  }
  j = json{{"set_class", to_string(r.set_class)},
           {"vc_dim", r.vc_dim},
           {"members", r.members},
           {"trials", r.trials},
           {"rows", rows}};
}

void to_json(json& j, const WidthEstimate& w) {
  j = json{{"value", w.value}, {"std_error", w.std_error}, {"trials", w.trials}, {"method", to_string(w.method)}};
}

void to_json(json& j, const SudakovReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"delta", row.delta},
                        {"radius", row.radius},
                        {"covering", row.covering},
                        {"lhs", row.lhs},
                        {"ratio", row.ratio}});
  }
  j = json{{"metric", to_string(r.metric)}, {"width", r.width}, {"max_ratio", r.max_ratio}, {"rows", rows}};
}

void to_json(json& j, const CompareReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"delta", row.delta},
                        {"covering", row.covering},
                        {"lhs", row.lhs},
                        {"gaussian_bound", row.gaussian_bound},
                        {"hemisphere_bound", row.hemisphere_bound},
                        {"holds", row.holds}});
  }
  j = json{{"constant", r.constant}, {"holds", r.holds()}, {"rows", rows}};
}

void to_json(json& j, const CellReport& r) {
  j = json{{"delta", r.delta},
           {"num_cells", r.num_cells},
           {"max_cell_diameter", r.max_cell_diameter},
           {"violating_pair", r.violating_pair ? json::array({r.violating_pair->first, r.violating_pair->second})
                                               : json(nullptr)}};
}

void to_json(json& j, const RipReport& r) {
  j = json{{"sup_discrepancy", r.sup_discrepancy},
           {"argmax_pair", json::array({r.argmax_pair.first, r.argmax_pair.second})},
           {"m", r.m},
           {"delta_target", r.delta_target},
           {"pass", r.pass}};
}

void to_json(json& j, const MetricRatioReport& r) {
  j = json{{"sup_ratio", r.sup_ratio},
           {"argmax_pair", json::array({r.argmax_pair.first, r.argmax_pair.second})},
           {"m", r.m},
           {"min_sep", r.min_sep},
           {"pass", r.pass}};
}

void to_json(json& j, const SignProductReport& r) {
  j = json{{"lambda", r.lambda}, {"statistic", r.statistic}, {"x", r.x}, {"y", r.y}, {"m", r.m}};
}

}  // namespace onebit
