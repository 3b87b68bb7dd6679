#ifndef IAFEAS_REPORT_HPP
#define IAFEAS_REPORT_HPP

#include <nlohmann/json.hpp>

#include "iafeas/bounds.hpp"
#include "iafeas/crosscheck.hpp"
#include "iafeas/dof_search.hpp"
#include "iafeas/exact.hpp"
#include "iafeas/feasibility.hpp"
#include "iafeas/scenario.hpp"

namespace iafeas {

using nlohmann::json;

/// The feasibility report: every key is always present; optional quantities
/// are null. `runtime_ms` is null unless a measured value is supplied, which
/// keeps JSON output byte-identical across runs with the same seed.
json feasibility_report(const Scenario& scenario, const Verdict& verdict,
                        const BoundsReport& bounds, double runtime_ms = -1.0);

json bounds_report_json(const Scenario& scenario, const BoundsReport& bounds);
json properness_report_json(const Scenario& scenario, const SubsetProperness& subsets,
                            long long s);
json dof_report_json(const DofResult& result, RandomSeed seed, int trials);
json exact_report_json(const Scenario& scenario, const ExactVerdict& verdict, RandomSeed seed);
json crosscheck_report_json(const Scenario& scenario, const Verdict& verdict,
                            const CorroborationReport& report);
json error_report_json(const std::string& input, const std::string& message);

} // namespace iafeas

#endif
