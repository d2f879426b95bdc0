#include "bellman/json_io.hpp"

#include <sstream>

namespace bellman::io {

json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw DomainError("expected a rational string, got " + j.dump());
}

json to_json(const dyadic::DyadicInterval& J) { return {{"d", J.depth}, {"i", J.index}}; }

json to_json(const dyadic::DyadicSet& E) {
  json arr = json::array();
  for (const auto& J : E.intervals()) arr.push_back(to_json(J));
  return {{"intervals", arr}};
}

json to_json(const dyadic::CarlesonSequence& seq) {
  json arr = json::array();
  for (const auto& [J, w] : seq.weights()) arr.push_back({{"d", J.depth}, {"i", J.index}, {"w", w.to_string()}});
  return {{"weights", arr}};
}

json to_json(const dyadic::Config& c) { return {{"E", to_json(c.set())}, {"alpha", to_json(c.seq())}}; }

dyadic::DyadicInterval interval_from_json(const json& j) {
  return {j.at("d").get<int>(), j.at("i").get<std::int64_t>()};
}

dyadic::DyadicSet set_from_json(const json& j) {
  std::vector<dyadic::DyadicInterval> out;
  for (const auto& e : j.at("intervals")) out.push_back(interval_from_json(e));
  return dyadic::DyadicSet(std::move(out));
}

dyadic::CarlesonSequence sequence_from_json(const json& j) {
  dyadic::CarlesonSequence seq;
  for (const auto& e : j.at("weights")) seq.set(interval_from_json(e), rational_from_json(e.at("w")));
  return seq;
}

dyadic::Config config_from_json(const json& j) {
  return dyadic::Config(set_from_json(j.at("E")), sequence_from_json(j.at("alpha")));
}

json to_json(const verify::Violation& v) {
  json w = json::object();
  for (const auto& [k, r] : v.witness) w[k] = r.to_string();
  return {{"check", v.check}, {"witness", w}, {"lhs", v.lhs.to_string()}, {"rhs", v.rhs.to_string()}};
}

json to_json(const verify::CheckReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations) vs.push_back(to_json(v));
  return {{"check", r.check}, {"samples", r.samples}, {"violations", vs}};
}

json to_json(const verify::BruteForceReport& r) {
  json rows = json::array();
  std::size_t attained = 0;
  for (const auto& e : r.table) {
    rows.push_back({{"x", e.x.to_string()},
                    {"A", e.A.to_string()},
                    {"lambda", e.lambda.to_string()},
                    {"maxV", e.max_v.to_string()},
                    {"B", e.B.to_string()},
                    {"attained", e.attained()}});
    if (e.attained()) ++attained;
  }
  return {{"depth", r.depth},
          {"mode", r.exhaustive ? "exhaustive" : "sampled"},
          {"seed", r.seed},
          {"sequences", r.sequences},
          {"configs_scanned", r.configs_scanned},
          {"entries", r.table.size()},
          {"attained_entries", attained},
          {"domination", r.domination},
          {"table", rows}};
}

json to_json(const extremal::Attainment& a) {
  return {{"target",
           {{"x", a.target.x.to_string()},
            {"A", a.target.A.to_string()},
            {"lambda", a.target.lambda.to_string()},
            {"B", a.target.value.to_string()}}},
          {"achieved_V", a.achieved.to_string()},
          {"attained", a.attained()}};
}

json to_json(const candidate::Curve& c) {
  json verts = json::array();
  for (const auto& p : c.vertices) verts.push_back(json::array({p.x.to_string(), p.y.to_string()}));
  return {{"m", c.m}, {"vertices", verts}};
}

std::string brute_force_csv(const verify::BruteForceReport& r) {
  std::ostringstream os;
  os << "x,A,lambda,maxV,B,attained\n";
  for (const auto& e : r.table)
    os << e.x << ',' << e.A << ',' << e.lambda << ',' << e.max_v << ',' << e.B << ',' << (e.attained() ? 1 : 0)
       << '\n';
  return os.str();
}

std::string curves_csv(const std::vector<candidate::Curve>& curves) {
  std::ostringstream os;
  os << "m,k,x,lambda\n";
  for (const auto& c : curves) {
    // vertices[0] is the origin; vertices[1 + t] is vertex k = m - t.
    for (std::size_t t = 0; t < c.vertices.size(); ++t) {
      os << c.m << ',';
      if (t > 0) os << c.m - static_cast<int>(t - 1);
      os << ',' << c.vertices[t].x << ',' << c.vertices[t].y << '\n';
    }
  }
  return os.str();
}

}  // namespace bellman::io
