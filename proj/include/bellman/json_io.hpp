#pragma once

// JSON forms of the simulator objects and reports. Rationals are written as
// "p/q" strings in lowest terms ("p" for integers).

#include "bellman/brute_force.hpp"
#include "bellman/candidate.hpp"
#include "bellman/dyadic.hpp"
#include "bellman/extremal.hpp"
#include "bellman/verify.hpp"

#include <json.hpp>

#include <string>

namespace bellman::io {

using nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const dyadic::DyadicInterval& J);
json to_json(const dyadic::DyadicSet& E);
json to_json(const dyadic::CarlesonSequence& seq);
json to_json(const dyadic::Config& c);

dyadic::DyadicInterval interval_from_json(const json& j);
dyadic::DyadicSet set_from_json(const json& j);
dyadic::CarlesonSequence sequence_from_json(const json& j);
dyadic::Config config_from_json(const json& j);

json to_json(const verify::Violation& v);
json to_json(const verify::CheckReport& r);
json to_json(const verify::BruteForceReport& r);
json to_json(const extremal::Attainment& a);
/// {"m": m, "vertices": [[x, lambda], ...]}
json to_json(const candidate::Curve& c);

/// Columns x, A, lambda, maxV, B, attained.
std::string brute_force_csv(const verify::BruteForceReport& r);
/// Columns m, k, x, lambda; the origin row has an empty k.
std::string curves_csv(const std::vector<candidate::Curve>& curves);

}  // namespace bellman::io
