#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "mrbot/config.hpp"
#include "mrbot/hemo.hpp"
#include "mrbot/safety.hpp"
#include "mrbot/sim_log.hpp"

namespace mrbot {

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

// `t,x,y,z,vx,vy,vz,s,margin`, one row per Tp sample.
void write_trajectory_csv(std::ostream& out, const SimLog& log);
// `t,gx,gy,gz,clamped`, one row per gradient update.
void write_gradients_csv(std::ostream& out, const SimLog& log);
// `t,v` sampled at `rate_hz` over `periods` cardiac periods (1 s each for
// constant flow).
void write_flow_csv(std::ostream& out, const FlowProfile& flow, double periods, double rate_hz);

nlohmann::json to_json(const FeasibilityReport& report);
// Echo of every config value, keyed exactly as in the config file.
nlohmann::json config_json(const RunConfig& config);
// report.json: feasibility fields at the top level plus run details.
nlohmann::json report_json(const FeasibilityReport& report, const SimLog& log,
                           const RunConfig& config);

}  // namespace mrbot
