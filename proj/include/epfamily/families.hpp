#pragma once

#include "epfamily/data.hpp"
#include "epfamily/distribution.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace epfamily {

/// Coordinate transform used for unconstrained optimization of one parameter.
enum class Transform {
  identity,
  log_positive, // optimizer works on log(x); x > 0 enforced structurally
};

struct ParamSpec {
  std::string name;
  Transform transform;
};

/// A named, fittable model: the family shape lambda plus its baseline
/// parameters, in reporting order (lambda first). Registry ids: eep, ewp,
/// ge2p, egevp.
class ModelFamily {
public:
  using BuildFn = DistributionPtr (*)(const std::vector<double>&);
  using StartsFn = std::vector<std::vector<double>> (*)(const CensoredSample&);

  ModelFamily(std::string id, std::vector<ParamSpec> params, BuildFn build, StartsFn starts)
      : id_(std::move(id)), params_(std::move(params)), build_(build), starts_(starts) {}

  const std::string& id() const { return id_; }
  const std::vector<ParamSpec>& params() const { return params_; }
  std::size_t k() const { return params_.size(); }

  /// Instantiate the model. Throws std::domain_error for parameters outside
  /// the domain (wrong count is std::invalid_argument: a caller bug).
  DistributionPtr build(const std::vector<double>& params) const;

  /// Multi-start points: moment-matched baseline parameters crossed with
  /// lambda in {-4, -1, 1, 4} (both compounding regimes must be explored),
  /// 8 in all, deterministic order.
  std::vector<std::vector<double>> starts(const CensoredSample& data) const;

  std::vector<double> to_transformed(const std::vector<double>& params) const;
  std::vector<double> from_transformed(const std::vector<double>& z) const;

private:
  std::string id_;
  std::vector<ParamSpec> params_;
  BuildFn build_;
  StartsFn starts_;
};

/// Lookup by id; throws std::invalid_argument for unknown ids.
const ModelFamily& family(std::string_view id);

const std::vector<std::string>& family_ids();

/// Censored log-likelihood of a parameter vector under a family; -inf for
/// parameters outside the domain (a rejected point, not an error).
double log_likelihood(const ModelFamily& fam, const std::vector<double>& params,
                      const CensoredSample& data);

} // namespace epfamily
