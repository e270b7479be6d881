#include "deontic/rss.hpp"

namespace deontic::rss {

std::string grow(const std::string& giver, const std::string& receiver) {
  return "grow_" + giver + "_" + receiver;
}
std::string proceeds(const std::string& agent) { return "p_" + agent; }
std::string granted(const std::string& agent) { return "g_" + agent; }
std::string wants_lane_change(const std::string& agent) { return "w_" + agent; }

Formula takes_row(const std::string& agent, const std::vector<std::string>& agents) {
  std::vector<Formula> given;
  for (const auto& b : agents)
    if (b != agent) given.push_back(fml::atom(grow(b, agent)));
  return fml::And(fml::atom(proceeds(agent)), fml::Not(fml::all_of(given)));
}

RearEnd rss1(const std::string& agent, const Formula& collision) {
  return {OughtStatement(agent, plain(fml::Not(collision))),
          OughtStatement(agent, refrain(agent, plain(collision)))};
}

OughtStatement rss2(const std::string& agent, const Formula& cut_in, const Formula& reckless) {
  return OughtStatement(
      agent, plain(fml::A(fml::G(fml::Implies(fml::Or(cut_in, reckless), fml::Not(reckless))))));
}

RightOfWay rss3(const std::vector<std::string>& agents) {
  std::vector<Formula> grants;
  for (const auto& a : agents) grants.push_back(fml::atom(granted(a)));
  RightOfWay r{{}, OughtStatement(agents, plain(fml::E(fml::any_of(grants)))), {}};
  for (const auto& a : agents) {
    r.prohib0.emplace_back(a, plain(fml::Not(takes_row(a, agents))));
    r.prohib.emplace_back(
        a, plain(fml::G(fml::Implies(fml::Not(fml::atom(granted(a))),
                                     fml::Not(fml::atom(proceeds(a)))))));
  }
  return r;
}

OughtStatement rss6(const std::string& agent, unsigned n) {
  const Formula waits = fml::BR(n, fml::Not(fml::atom(proceeds(agent))), fml::atom(granted(agent)));
  return OughtStatement(agent, refrain(agent, plain(waits)),
                        plain(fml::atom(wants_lane_change(agent))));
}

}  // namespace deontic::rss
