#include <functional>
#include <map>
#include <random>

#include "cli.hpp"
#include "deontic/formula.hpp"
#include "deontic/properties.hpp"
#include "deontic/rss.hpp"
#include "deontic/tree_model.hpp"

namespace cli {

using namespace deontic;

namespace {

namespace f = deontic::fml;

class Demo {
 public:
  explicit Demo(Outcome& out) : out_(out) {
    out_.result["assertions"] = json::array();
    out_.result["suites"] = json::array();
  }

  void expect(const std::string& claim, bool expected, bool actual) {
    const bool pass = expected == actual;
    ok_ = ok_ && pass;
    out_.result["assertions"].push_back(
        {{"claim", claim}, {"expected", expected}, {"actual", actual}, {"pass", pass}});
    out_.human << (pass ? "  ok    " : "  FAIL  ") << claim << ": " << (actual ? "true" : "false")
               << '\n';
  }

  void suite(const props::SuiteResult& r) {
    ok_ = ok_ && r.violations == 0;
    json j = {{"name", r.name},
              {"models", r.models},
              {"checks", r.checks},
              {"violations", r.violations}};
    if (r.violations) j["first_violation"] = r.first_violation;
    out_.result["suites"].push_back(j);
    out_.human << (r.violations ? "  FAIL  " : "  ok    ") << r.name << ": " << r.checks
               << " checks on " << r.models << " models, " << r.violations << " violations\n";
    if (r.violations) out_.human << "        " << r.first_violation << '\n';
  }

  void finish() {
    out_.result["holds"] = ok_;
    out_.status = ok_ ? "holds" : "fails";
    out_.exit_code = ok_ ? exit_holds : exit_fails;
  }

 private:
  Outcome& out_;
  bool ok_ = true;
};

bool holds_at(const tree::ModelData& d, int m, const OughtStatement& o) {
  const tree::ExplicitStitModel model(d);
  return tree::sat_statement(model, m, model.to_ids(model.histories_through(m)).front(), o);
}

void rear_end(Demo& demo, const RssArgs&) {
  const auto r = rss::rss1("alpha", f::atom("hit_from_behind"));
  const auto unavoidable = rss::unavoidable_collision();
  const tree::ExplicitStitModel m(unavoidable);
  demo.expect("unavoidable: hit_from_behind on every history",
              true, tree::extension(m, 0, plain(f::atom("hit_from_behind"))) ==
                        m.histories_through(0));
  demo.expect("unavoidable: " + render(r.naive), false, holds_at(unavoidable, 0, r.naive));
  demo.expect("unavoidable: " + render(r.refined), true, holds_at(unavoidable, 0, r.refined));
  const auto avoidable = rss::avoidable_collision();
  demo.expect("avoidable: " + render(r.naive), true, holds_at(avoidable, 0, r.naive));
  demo.expect("avoidable: " + render(r.refined), true, holds_at(avoidable, 0, r.refined));
}

void force_others(Demo& demo, const RssArgs& a) {
  const tree::ExplicitStitModel m(rss::forced_to_proceed());
  tree::Evaluator ev(m);
  const Formula p = f::atom(rss::proceeds("alpha"));
  const Formula grow = f::atom(rss::grow("beta", "alpha"));
  const auto prohib0 = rss::rss3({"alpha", "beta"}).prohib0[0];
  demo.expect("alpha cannot refrain from proceeding", true, ev.extension(0, f::Not(p)).none());
  demo.expect("extension of !p_alpha | grow_beta_alpha is the union", true,
              ev.extension(0, f::Or(f::Not(p), grow)) ==
                  (ev.extension(0, f::Not(p)) | ev.extension(0, grow)));
  const bool via_grow = ev.ought_holds({"alpha"}, 0, grow);
  demo.expect(render(prohib0) + " agrees with O[alpha cstit: grow_beta_alpha]", true,
              holds_at(rss::forced_to_proceed(), 0, prohib0) == via_grow);
  demo.expect("O[alpha cstit: grow_beta_alpha]", false, via_grow);
  std::mt19937_64 rng(a.seed);
  demo.suite(props::force_others(rng, a.models));
}

void fig2_obligations(Demo& demo, const RssArgs&) {
  const auto d = rss::fig2();
  const int later = rss::fig2_later;
  const std::vector<std::tuple<int, const char*, bool>> claims = {
      {0, "O[alpha cstit: G !p & chi]", true},     {0, "O[alpha cstit: G !p]", true},
      {0, "O[alpha cstit: chi]", true},            {later, "O[alpha cstit: F[0:2] p]", true},
      {later, "O[alpha cstit: F[0:1] p]", false},  {0, "O[alpha cstit: E F[1:2] p]", false},
  };
  for (const auto& [m, text, expected] : claims)
    demo.expect("moment " + std::to_string(m) + ": " + text, expected,
                holds_at(d, m, parse_ought(text)));
}

void fig3_inference(Demo& demo, const RssArgs&) {
  const auto d = rss::fig3();
  const tree::ExplicitStitModel m(d);
  demo.expect("inference condition for alpha at moment 0", true,
              tree::check_inference_condition(m, "alpha", 0, rss::granted("alpha"),
                                              rss::proceeds("alpha"))
                  .holds);
  const auto prohib = rss::rss3({"alpha"}).prohib[0];
  demo.expect("moment " + std::to_string(rss::fig3_later) + ": " + render(prohib), true,
              holds_at(d, rss::fig3_later, prohib));
  demo.expect("moment 0: " + render(prohib), false, holds_at(d, 0, prohib));
  for (unsigned n = 0; n <= 3; ++n) {
    const auto o = rss::rss6("alpha", n);
    demo.expect("moment 0: " + render(o), true, holds_at(d, 0, o));
  }
}

void refrain_refrain(Demo& demo, const RssArgs& a) {
  std::mt19937_64 rng(a.seed);
  demo.suite(props::refrain_refrain(rng, a.models));
  demo.suite(props::dstit_idempotence(rng, a.models));
}

using DemoFn = std::function<void(Demo&, const RssArgs&)>;

const std::map<std::string, DemoFn>& demos() {
  static const std::map<std::string, DemoFn> d = {
      {"rss1-unavoidable", rear_end},     {"force-others", force_others},
      {"fig2-obligations", fig2_obligations}, {"fig3-inference", fig3_inference},
      {"refrain-refrain", refrain_refrain},
  };
  return d;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : demos()) n.push_back(k);
    return n;
  }();
  return names;
}

void cmd_rss(Outcome& out, const RssArgs& a) {
  out.result["demo"] = a.name;
  out.result["seed"] = a.seed;
  out.result["models"] = a.models;
  out.human << a.name << '\n';
  Demo demo(out);
  demos().at(a.name)(demo, a);
  demo.finish();
}

}  // namespace cli
