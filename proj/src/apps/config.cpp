#include "sburgers/apps/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sburgers {

namespace {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ConfigurationError("config: " + where + ": " + what);
}

class Reader {
 public:
  Reader(const json& node, std::string where) : node_(node), where_(std::move(where)) {
    if (!node_.is_object()) bad(where_, "expected an object");
  }

  void get(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) bad(at(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) bad(at(key), "must be finite");
    }
  }

  void get(const char* key, Index& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) bad(at(key), "expected an integer");
      out = v->get<Index>();
    }
  }

  void get(const char* key, int& out) {
    Index wide = out;
    get(key, wide);
    out = static_cast<int>(wide);
  }

  void get(const char* key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) bad(at(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void get(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) bad(at(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  template <typename T>
  void get(const char* key, std::vector<T>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) bad(at(key), "expected an array");
      std::vector<T> items;
      for (std::size_t i = 0; i < v->size(); ++i) {
        json wrapper = json::object();
        wrapper["item"] = (*v)[i];
        Reader r(wrapper, at(key) + "[" + std::to_string(i) + "]");
        T item{};
        r.get("item", item);
        items.push_back(item);
      }
      out = std::move(items);
    }
  }

  /// Visits a nested object if present.
  template <typename Fn>
  void object(const char* key, Fn&& fn) {
    if (const json* v = find(key)) {
      Reader r(*v, at(key));
      fn(r);
      r.finish();
    }
  }

  /// Visits every element of an array of objects if present.
  template <typename Fn>
  void objects(const char* key, Fn&& fn) {
    if (const json* v = find(key)) {
      if (!v->is_array()) bad(at(key), "expected an array");
      for (std::size_t i = 0; i < v->size(); ++i) {
        Reader r((*v)[i], at(key) + "[" + std::to_string(i) + "]");
        fn(r, i);
        r.finish();
      }
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) bad(at(it.key().c_str()), "unknown key");
    }
  }

 private:
  const json* find(const char* key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  std::string at(const char* key) const { return where_.empty() ? key : where_ + "." + key; }

  const json& node_;
  std::string where_;
  std::set<std::string> seen_;
};

void read(Reader& r, GridSpec& g) {
  r.get("x_min", g.x_min);
  r.get("x_max", g.x_max);
  r.get("nx", g.nx);
  r.get("horizon", g.horizon);
  r.get("nt", g.nt);
}

void read(Reader& r, ProfileSpec& p) {
  r.get("kind", p.kind);
  r.get("shift", p.shift);
  r.get("amplitude", p.amplitude);
  r.get("frequency", p.frequency);
  r.get("values", p.values);
}

void read(Reader& r, SigmaModel& s) {
  r.get("sigma0", s.sigma0);
  r.get("nu", s.nu);
}

ordered to_json(const GridSpec& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx}, {"horizon", g.horizon}, {"nt", g.nt}};
}

ordered to_json(const ProfileSpec& p) {
  ordered j{{"kind", p.kind}, {"shift", p.shift}, {"amplitude", p.amplitude}, {"frequency", p.frequency}};
  if (!p.values.empty()) j["values"] = p.values;
  return j;
}

ordered to_json(const SigmaModel& s) { return {{"sigma0", s.sigma0}, {"nu", s.nu}}; }

void check_grid(const GridSpec& g, const std::string& where) {
  try {
    (void)g.make();
  } catch (const ConfigurationError& e) {
    bad(where, e.what());
  }
}

void check_profile(const ProfileSpec& p, const std::string& where) {
  if (p.kind != "sin" && p.kind != "tanh" && p.kind != "tabulated") bad(where + ".kind", "expected sin, tanh or tabulated");
  if (p.kind == "tabulated" && p.values.empty()) bad(where + ".values", "tabulated profile needs values");
  if (p.kind != "tabulated" && !p.values.empty()) bad(where + ".values", "only tabulated profiles take values");
}

void positive(double v, const std::string& where) {
  if (!(v > 0.0)) bad(where, "must be positive");
}

void positive(Index v, const std::string& where) {
  if (v <= 0) bad(where, "must be positive");
}

void band(double lo, double hi, const std::string& where) {
  if (!(lo > 0.0 && lo < hi)) bad(where, "needs 0 < low < high");
}

}  // namespace

Profile make_profile(const ProfileSpec& spec, const Grid& grid) {
  const double s = spec.shift, a = spec.amplitude, k = spec.frequency;
  if (spec.kind == "sin") {
    return sample_profile(
        grid, [=](double x) { return s + a * std::sin(k * x); }, [=](double x) { return a * k * std::cos(k * x); },
        [=](double x) { return -a * k * k * std::sin(k * x); });
  }
  if (spec.kind == "tanh") {
    return sample_profile(
        grid, [=](double x) { return s + a * std::tanh(k * x); },
        [=](double x) {
          const double c = std::cosh(k * x);
          return a * k / (c * c);
        },
        [=](double x) {
          const double c = std::cosh(k * x);
          return -2.0 * a * k * k * std::tanh(k * x) / (c * c);
        });
  }
  if (spec.kind == "tabulated") {
    if (static_cast<Index>(spec.values.size()) != grid.nx()) {
      throw SizingError("profile: tabulated values have " + std::to_string(spec.values.size()) + " entries, grid has " +
                        std::to_string(grid.nx()));
    }
    return sample_profile(grid, Eigen::Map<const Eigen::VectorXd>(spec.values.data(), grid.nx()));
  }
  throw ConfigurationError("profile: unknown kind '" + spec.kind + "'");
}

const std::vector<std::string>& known_applications() {
  static const std::vector<std::string> apps{"simulate-forward", "verify-colehopf", "verify-constraints",
                                             "feynman-kac",      "fbsde-check",     "controllability",
                                             "price-claim",      "suite"};
  return apps;
}

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("config: malformed JSON: ") + e.what());
  }
  ScenarioConfig c;
  Reader r(doc, "");
  r.get("application", c.application);
  r.get("seed", c.seed);
  r.get("refine_levels", c.refine_levels);
  r.get("output_dir", c.output_dir);
  r.object("forward", [&](Reader& f) {
    auto& s = c.forward;
    f.object("grid", [&](Reader& g) { read(g, s.grid); });
    f.get("sigma", s.sigma);
    f.get("b", s.b);
    f.get("m", s.m);
    f.get("f", s.f);
    f.get("c_bar", s.c_bar);
    f.object("p0", [&](Reader& p) { read(p, s.p0); });
    f.get("paths", s.paths);
    f.get("output_stride", s.output_stride);
    f.get("max_gap", s.max_gap);
    f.get("min_shrink", s.min_shrink);
  });
  r.object("point_transform", [&](Reader& p) {
    auto& s = c.point_transform;
    p.get("points", s.points);
    p.get("min_abs", s.min_abs);
    p.get("max_abs", s.max_abs);
    p.get("tolerance", s.tolerance);
  });
  r.object("backward", [&](Reader& b) {
    auto& s = c.backward;
    b.object("grid", [&](Reader& g) { read(g, s.grid); });
    b.object("sigma", [&](Reader& g) { read(g, s.sigma); });
    std::vector<FamilySpec> families;
    bool present = false;
    b.objects("families", [&](Reader& fr, std::size_t) {
      present = true;
      FamilySpec spec;
      fr.get("family", spec.family);
      fr.object("profile", [&](Reader& p) { read(p, spec.profile); });
      families.push_back(spec);
    });
    if (present) s.families = families;
    b.get("paths", s.paths);
    b.get("control_m_shift", s.control_m_shift);
    b.get("rate_low", s.rate_low);
    b.get("rate_high", s.rate_high);
    b.get("control_max_ratio", s.control_max_ratio);
  });
  r.object("constants", [&](Reader& k) {
    auto& s = c.constants;
    k.get("alpha", s.alpha);
    k.get("beta", s.beta);
    k.get("sigma_1", s.sigma_1);
    k.get("sigma_2", s.sigma_2);
    k.get("tolerance", s.tolerance);
  });
  r.object("fk_forward", [&](Reader& f) {
    auto& s = c.fk_forward;
    f.get("lambda", s.lambda);
    f.get("k", s.k);
    f.get("sigma", s.sigma);
    f.get("c_bar", s.c_bar);
    f.get("t", s.t);
    f.get("x", s.x);
    f.get("samples", s.samples);
    f.object("pde_grid", [&](Reader& g) { read(g, s.pde_grid); });
    f.get("pde_tolerance", s.pde_tolerance);
  });
  r.object("fk_backward", [&](Reader& f) {
    auto& s = c.fk_backward;
    f.get("horizon", s.horizon);
    f.get("nt", s.nt);
    f.get("x", s.x);
    f.get("samples", s.samples);
    f.get("inner_batch", s.inner_batch);
  });
  r.object("fbsde", [&](Reader& f) {
    auto& s = c.fbsde;
    f.object("grid", [&](Reader& g) { read(g, s.grid); });
    f.object("sigma", [&](Reader& g) { read(g, s.sigma); });
    f.get("alpha", s.alpha);
    f.get("beta", s.beta);
    f.get("paths", s.paths);
    f.get("rate_low", s.rate_low);
    f.get("rate_high", s.rate_high);
    f.get("identity_tolerance", s.identity_tolerance);
  });
  r.object("applications", [&](Reader& a) {
    auto& s = c.applications;
    a.object("grid", [&](Reader& g) { read(g, s.grid); });
    a.get("x0", s.x0);
    a.get("rate", s.rate);
    a.get("s0", s.s0);
    a.get("vol_of_vol", s.vol_of_vol);
    a.get("paths", s.paths);
    a.get("gap_tolerance", s.gap_tolerance);
    a.get("exact_floor", s.exact_floor);
    a.get("rate_low", s.rate_low);
    a.get("rate_high", s.rate_high);
  });
  r.object("infrastructure", [&](Reader& i) {
    auto& s = c.infrastructure;
    i.get("se_samples", s.se_samples);
    i.get("se_seeds", s.se_seeds);
    i.get("se_ratio_tolerance", s.se_ratio_tolerance);
    i.get("gauge_tolerance", s.gauge_tolerance);
  });
  r.finish();
  validate_config(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("config: cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate_config(const ScenarioConfig& c) {
  const auto& apps = known_applications();
  if (std::find(apps.begin(), apps.end(), c.application) == apps.end()) {
    bad("application", "unknown application '" + c.application + "'");
  }
  if (c.refine_levels < 1 || c.refine_levels > 4) bad("refine_levels", "must lie in 1..4");
  if (c.output_dir.empty()) bad("output_dir", "must not be empty");

  const auto& fw = c.forward;
  check_grid(fw.grid, "forward.grid");
  check_profile(fw.p0, "forward.p0");
  if (fw.sigma == 0.0) bad("forward.sigma", "must be nonzero");
  positive(fw.paths, "forward.paths");
  positive(fw.output_stride, "forward.output_stride");
  if (fw.grid.nt % fw.output_stride != 0) bad("forward.output_stride", "must divide forward.grid.nt");
  positive(fw.max_gap, "forward.max_gap");
  positive(fw.min_shrink, "forward.min_shrink");

  const auto& pt = c.point_transform;
  positive(pt.points, "point_transform.points");
  positive(pt.min_abs, "point_transform.min_abs");
  if (!(pt.max_abs > pt.min_abs)) bad("point_transform.max_abs", "must exceed min_abs");
  positive(pt.tolerance, "point_transform.tolerance");

  const auto& bw = c.backward;
  check_grid(bw.grid, "backward.grid");
  if (bw.sigma.sigma0 == 0.0) bad("backward.sigma.sigma0", "must be nonzero");
  if (bw.families.empty()) bad("backward.families", "needs at least one family");
  for (std::size_t i = 0; i < bw.families.size(); ++i) {
    const std::string where = "backward.families[" + std::to_string(i) + "]";
    if (bw.families[i].family != 1 && bw.families[i].family != 2) bad(where + ".family", "must be 1 or 2");
    check_profile(bw.families[i].profile, where + ".profile");
    if (bw.families[i].profile.kind == "tabulated") bad(where + ".profile", "refinement sweeps need an analytic profile");
  }
  positive(bw.paths, "backward.paths");
  band(bw.rate_low, bw.rate_high, "backward.rate_low");
  positive(bw.control_max_ratio, "backward.control_max_ratio");

  const auto& k = c.constants;
  if (!(k.sigma_1 < 0.0) || !(k.sigma_2 < 0.0)) bad("constants.sigma_1", "the pricing sign convention needs sigma < 0");
  positive(k.beta, "constants.beta");
  positive(k.tolerance, "constants.tolerance");

  const auto& ff = c.fk_forward;
  if (ff.sigma == 0.0) bad("fk_forward.sigma", "must be nonzero");
  positive(ff.t, "fk_forward.t");
  if (ff.samples < 2) bad("fk_forward.samples", "needs at least two samples");
  check_grid(ff.pde_grid, "fk_forward.pde_grid");
  if (std::fabs(ff.pde_grid.horizon - ff.t) > 1e-12) bad("fk_forward.pde_grid.horizon", "must equal fk_forward.t");
  positive(ff.pde_tolerance, "fk_forward.pde_tolerance");

  const auto& fb = c.fk_backward;
  positive(fb.horizon, "fk_backward.horizon");
  positive(fb.nt, "fk_backward.nt");
  if (fb.samples < 2) bad("fk_backward.samples", "needs at least two samples");
  if (fb.inner_batch < 2) bad("fk_backward.inner_batch", "needs at least two samples");

  const auto& fs = c.fbsde;
  check_grid(fs.grid, "fbsde.grid");
  if (fs.sigma.sigma0 == 0.0) bad("fbsde.sigma.sigma0", "must be nonzero");
  positive(fs.beta, "fbsde.beta");
  positive(fs.paths, "fbsde.paths");
  if (fs.grid.nt % (Index(1) << c.refine_levels) != 0) bad("fbsde.grid.nt", "must be divisible by 2^refine_levels");
  band(fs.rate_low, fs.rate_high, "fbsde.rate_low");
  positive(fs.identity_tolerance, "fbsde.identity_tolerance");

  const auto& ap = c.applications;
  check_grid(ap.grid, "applications.grid");
  if (ap.grid.nt % (Index(1) << c.refine_levels) != 0) {
    bad("applications.grid.nt", "must be divisible by 2^refine_levels");
  }
  if (ap.rate < 0.0) bad("applications.rate", "must be non-negative");
  if (ap.s0 < 0.0) bad("applications.s0", "must be non-negative");
  positive(ap.paths, "applications.paths");
  positive(ap.gap_tolerance, "applications.gap_tolerance");
  positive(ap.exact_floor, "applications.exact_floor");
  band(ap.rate_low, ap.rate_high, "applications.rate_low");

  const auto& in = c.infrastructure;
  if (in.se_samples < 2) bad("infrastructure.se_samples", "needs at least two samples");
  if (in.se_seeds.empty()) bad("infrastructure.se_seeds", "needs at least one seed");
  positive(in.se_ratio_tolerance, "infrastructure.se_ratio_tolerance");
  positive(in.gauge_tolerance, "infrastructure.gauge_tolerance");
}

std::string config_to_json(const ScenarioConfig& c) {
  ordered families = ordered::array();
  for (const auto& f : c.backward.families) families.push_back({{"family", f.family}, {"profile", to_json(f.profile)}});
  const auto& fw = c.forward;
  const auto& bw = c.backward;
  const auto& ff = c.fk_forward;
  const auto& fb = c.fk_backward;
  const auto& fs = c.fbsde;
  const auto& ap = c.applications;
  const auto& in = c.infrastructure;
  ordered j{
      {"application", c.application},
      {"seed", c.seed},
      {"refine_levels", c.refine_levels},
      {"output_dir", c.output_dir},
      {"forward",
       {{"grid", to_json(fw.grid)},
        {"sigma", fw.sigma},
        {"b", fw.b},
        {"m", fw.m},
        {"f", fw.f},
        {"c_bar", fw.c_bar},
        {"p0", to_json(fw.p0)},
        {"paths", fw.paths},
        {"output_stride", fw.output_stride},
        {"max_gap", fw.max_gap},
        {"min_shrink", fw.min_shrink}}},
      {"point_transform",
       {{"points", c.point_transform.points},
        {"min_abs", c.point_transform.min_abs},
        {"max_abs", c.point_transform.max_abs},
        {"tolerance", c.point_transform.tolerance}}},
      {"backward",
       {{"grid", to_json(bw.grid)},
        {"sigma", to_json(bw.sigma)},
        {"families", families},
        {"paths", bw.paths},
        {"control_m_shift", bw.control_m_shift},
        {"rate_low", bw.rate_low},
        {"rate_high", bw.rate_high},
        {"control_max_ratio", bw.control_max_ratio}}},
      {"constants",
       {{"alpha", c.constants.alpha},
        {"beta", c.constants.beta},
        {"sigma_1", c.constants.sigma_1},
        {"sigma_2", c.constants.sigma_2},
        {"tolerance", c.constants.tolerance}}},
      {"fk_forward",
       {{"lambda", ff.lambda},
        {"k", ff.k},
        {"sigma", ff.sigma},
        {"c_bar", ff.c_bar},
        {"t", ff.t},
        {"x", ff.x},
        {"samples", ff.samples},
        {"pde_grid", to_json(ff.pde_grid)},
        {"pde_tolerance", ff.pde_tolerance}}},
      {"fk_backward",
       {{"horizon", fb.horizon}, {"nt", fb.nt}, {"x", fb.x}, {"samples", fb.samples}, {"inner_batch", fb.inner_batch}}},
      {"fbsde",
       {{"grid", to_json(fs.grid)},
        {"sigma", to_json(fs.sigma)},
        {"alpha", fs.alpha},
        {"beta", fs.beta},
        {"paths", fs.paths},
        {"rate_low", fs.rate_low},
        {"rate_high", fs.rate_high},
        {"identity_tolerance", fs.identity_tolerance}}},
      {"applications",
       {{"grid", to_json(ap.grid)},
        {"x0", ap.x0},
        {"rate", ap.rate},
        {"s0", ap.s0},
        {"vol_of_vol", ap.vol_of_vol},
        {"paths", ap.paths},
        {"gap_tolerance", ap.gap_tolerance},
        {"exact_floor", ap.exact_floor},
        {"rate_low", ap.rate_low},
        {"rate_high", ap.rate_high}}},
      {"infrastructure",
       {{"se_samples", in.se_samples},
        {"se_seeds", in.se_seeds},
        {"se_ratio_tolerance", in.se_ratio_tolerance},
        {"gauge_tolerance", in.gauge_tolerance}}},
  };
  return j.dump(2) + "\n";
}

}  // namespace sburgers
