// halo: superlevel sets and Tauberian constants of geometric maximal
// operators. Subcommands map one-to-one onto the library's experiment
// recipes; every run is determined by its flags (the config hash is echoed
// into outputs) and writes its artifacts atomically.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "halo/covering.hpp"
#include "halo/geometry_io.hpp"
#include "halo/halo_lab.hpp"
#include "halo/iterated_chain.hpp"
#include "halo/maximal_1d.hpp"
#include "halo/svg_plot.hpp"
#include "halo/sweep_io.hpp"
#include "halo/version.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path + "'");
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create '" + tmp + "'");
    out << data;
    if (!out.flush()) throw IoError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

ordered_json envelope(const std::string& command, const std::string& config_hash) {
  ordered_json j;
  j["tool"] = "halo";
  j["version"] = std::string(halo::version);
  j["command"] = command;
  j["config_hash"] = config_hash;
  return j;
}

halo::Geometry load_geometry(const std::string& path) {
  return halo::parse_geometry_json(read_file(path));
}

halo::IntervalSet boxes_to_intervals(const halo::BoxSet& s) {
  if (s.dim() != 1) throw std::invalid_argument("expected a 1-dimensional set");
  std::vector<halo::Interval> ivs;
  for (const auto& b : s.boxes()) ivs.push_back(b.axes[0]);
  return halo::IntervalSet::from_raw(std::move(ivs));
}

ordered_json intervals_json(const halo::IntervalSet& s) {
  auto arr = ordered_json::array();
  for (const auto& iv : s.parts()) arr.push_back({iv.lo.str(), iv.hi.str()});
  return arr;
}

ordered_json boxes_json(const halo::BoxSet& s) {
  auto arr = ordered_json::array();
  for (const auto& b : s.boxes()) {
    auto jb = ordered_json::array();
    for (const auto& ax : b.axes) jb.push_back({ax.lo.str(), ax.hi.str()});
    arr.push_back(std::move(jb));
  }
  return arr;
}

double parse_grid(const std::string& text) {
  const double g = text.find('/') != std::string::npos ? halo::Rational::parse(text).to_double()
                                                       : std::stod(text);
  if (!(g > 0.0)) throw std::invalid_argument("grid step must be positive");
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  std::string config;
  for (int i = 1; i < argc; ++i) {
    config += argv[i];
    config += '\x1f';
  }
  const std::string config_hash = fnv1a_hex(config);

  CLI::App app{"superlevel sets and Tauberian constants of geometric maximal operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(halo::version));

  // --- superlevel ---
  std::string sl_set, sl_alpha, sl_gamma = "0", sl_out = "result.json";
  auto* sl = app.add_subcommand("superlevel", "exact 1D superlevel set of M(chi_E + gamma chi_Ec)");
  sl->add_option("--set", sl_set, "geometry JSON with a 1D box set")->required();
  sl->add_option("--alpha", sl_alpha, "level, rational p/q")->required();
  sl->add_option("--gamma", sl_gamma, "floor value, rational p/q");
  sl->add_option("--out", sl_out, "output JSON path");

  // --- lemma1 ---
  std::string l1_alpha, l1_gamma = "0", l1_set, l1_out = "lemma1.json";
  auto* l1 = app.add_subcommand("lemma1", "covering bound 1 + 4(1-alpha)/(alpha-gamma)");
  l1->add_option("--alpha", l1_alpha)->required();
  l1->add_option("--gamma", l1_gamma);
  l1->add_option("--set", l1_set, "optional 1D geometry JSON to verify against");
  l1->add_option("--out", l1_out);

  // --- chain ---
  std::string ch_set, ch_alpha1, ch_axes, ch_out = "trace.json";
  auto* ch = app.add_subcommand("chain", "iterated majorant chain trace");
  ch->add_option("--set", ch_set, "geometry JSON")->required();
  ch->add_option("--alpha1", ch_alpha1, "first threshold, rational p/q")->required();
  ch->add_option("--axes", ch_axes, "axis order, e.g. 2,1 (default 1..n)");
  ch->add_option("--out", ch_out);

  // --- cover ---
  std::string cv_set, cv_balls, cv_out = "cert.json";
  double cv_alpha = 0.0, cv_delta = 0.0;
  std::uint64_t cv_seed = 0;
  int cv_samples = 100000;
  long cv_cover_samples = 10000;
  auto* cv = app.add_subcommand("cover", "greedy ball selection with certificates");
  cv->add_option("--set", cv_set)->required();
  cv->add_option("--balls", cv_balls, "geometry JSON holding the candidate balls")->required();
  cv->add_option("--alpha", cv_alpha, "density level in (0,1)")->required();
  cv->add_option("--delta", cv_delta, "selection parameter in (0,1)")->required();
  cv->add_option("--seed", cv_seed);
  cv->add_option("--samples", cv_samples, "Monte Carlo samples per volume query");
  cv->add_option("--cover-samples", cv_cover_samples, "sample points for the dilation cover check");
  cv->add_option("--out", cv_out);

  // --- slab ---
  std::string sb_shape = "ball", sb_alphas = "1-2^-4..1-2^-12", sb_out = "slab.json", sb_svg;
  int sb_n = 2;
  bool sb_fit = false;
  auto* sb = app.add_subcommand("slab", "extremal protrusion heights over the slab example");
  sb->add_option("--shape", sb_shape)->check(CLI::IsMember({"ball", "cube"}));
  sb->add_option("--n", sb_n, "ambient dimension (2 or 3)");
  sb->add_option("--alphas", sb_alphas, "ladder, e.g. 1-2^-4..1-2^-12");
  sb->add_flag("--fit", sb_fit, "fit the exponent and annotate the plot");
  sb->add_option("--out", sb_out);
  sb->add_option("--svg", sb_svg, "SVG path (default: out with .svg suffix)");

  // --- sweep ---
  std::string sw_family, sw_set, sw_alphas, sw_grid = "1/256", sw_out = "sweep.csv";
  std::uint64_t sw_seed = 0;
  int sw_sizes = 6, sw_offsets = 2;
  auto* sw = app.add_subcommand("sweep", "sampled lower bounds of C_B(alpha) over a ladder");
  sw->add_option("--family", sw_family, "e.g. balls2d, cubes2d, intervals1d")->required();
  sw->add_option("--set", sw_set)->required();
  sw->add_option("--alphas", sw_alphas)->required();
  sw->add_option("--grid", sw_grid, "grid step, rational or decimal");
  sw->add_option("--seed", sw_seed);
  sw->add_option("--ladder-sizes", sw_sizes, "candidate size ladder depth");
  sw->add_option("--offsets", sw_offsets, "candidate lattice offsets per axis");
  sw->add_option("--out", sw_out);

  // --- fit ---
  std::string ft_in, ft_col = "lower_ratio", ft_out = "fit.json";
  auto* ft = app.add_subcommand("fit", "log-log exponent fit of a sweep column");
  ft->add_option("--in", ft_in)->required();
  ft->add_option("--col", ft_col);
  ft->add_option("--out", ft_out);

  // --- plot ---
  std::string pl_in, pl_col = "lower_ratio", pl_out = "plot.svg", pl_title = "halo sweep";
  bool pl_fit = false;
  auto* pl = app.add_subcommand("plot", "log-log SVG plot of a sweep column");
  pl->add_option("--in", pl_in)->required();
  pl->add_option("--col", pl_col);
  pl->add_flag("--fit", pl_fit);
  pl->add_option("--title", pl_title);
  pl->add_option("--out", pl_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << ordered_json{{"error", {{"code", kExitParse},
                                         {"kind", "parse"},
                                         {"message", e.what()}}}}.dump()
              << "\n";
    return kExitParse;
  }

  try {
    if (*sl) {
      const halo::Geometry g = load_geometry(sl_set);
      const halo::IntervalSet E = boxes_to_intervals(g.boxes);
      const halo::Rational alpha = halo::Rational::parse(sl_alpha);
      const halo::Rational gamma = halo::Rational::parse(sl_gamma);
      const halo::SuperlevelResult r = halo::superlevel_mixed({E, gamma}, alpha);
      ordered_json j = envelope("superlevel", config_hash);
      j["level"] = alpha.str();
      j["gamma"] = gamma.str();
      j["intervals"] = intervals_json(r.set);
      j["measure"] = r.set.measure().str();
      j["ratio"] = r.ratio.str();
      write_atomic(sl_out, j.dump(2) + "\n");
    } else if (*l1) {
      const halo::Rational alpha = halo::Rational::parse(l1_alpha);
      const halo::Rational gamma = halo::Rational::parse(l1_gamma);
      const halo::Rational bound = halo::lemma1_bound(alpha, gamma);
      ordered_json j = envelope("lemma1", config_hash);
      j["alpha"] = alpha.str();
      j["gamma"] = gamma.str();
      j["bound"] = bound.str();
      if (!l1_set.empty()) {
        const halo::IntervalSet E = boxes_to_intervals(load_geometry(l1_set).boxes);
        const halo::SuperlevelResult r = halo::superlevel_mixed({E, gamma}, alpha);
        j["set_measure"] = E.measure().str();
        j["superlevel_measure"] = r.set.measure().str();
        j["ratio"] = r.ratio.str();
        j["satisfied"] = r.set.measure() <= bound * E.measure();
      }
      write_atomic(l1_out, j.dump(2) + "\n");
    } else if (*ch) {
      const halo::Geometry g = load_geometry(ch_set);
      std::vector<int> axes;
      if (!ch_axes.empty()) {
        std::istringstream ss(ch_axes);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          const int axis = std::stoi(tok);
          if (axis < 1 || axis > g.dim)
            throw std::invalid_argument("axis out of range: " + tok);
          axes.push_back(axis - 1);
        }
      }
      const halo::ChainTrace t =
          halo::run_chain(g.boxes, halo::Rational::parse(ch_alpha1), axes);
      ordered_json j = envelope("chain", config_hash);
      j["dim"] = g.dim;
      j["alpha1"] = t.alphas.alpha1.str();
      auto jaxes = ordered_json::array();
      for (int a : t.axes) jaxes.push_back(a + 1);
      j["axes"] = std::move(jaxes);
      j["bound_factor"] = t.bound_factor.str();
      j["initial_measure"] = t.measures[0].str();
      auto steps = ordered_json::array();
      halo::Rational rhs = t.measures[0];
      bool all_ok = true;
      for (std::size_t s = 0; s < t.sets.size(); ++s) {
        rhs *= t.bound_factor;
        ordered_json step;
        step["axis"] = t.axes[s] + 1;
        step["alpha"] = t.alphas.thresholds[s].str();
        step["measure"] = t.measures[s + 1].str();
        step["bound"] = rhs.str();
        step["satisfied"] = t.measures[s + 1] <= rhs;
        all_ok = all_ok && (t.measures[s + 1] <= rhs);
        step["boxes"] = boxes_json(t.sets[s]);
        steps.push_back(std::move(step));
      }
      j["steps"] = std::move(steps);
      j["bound_satisfied"] = all_ok;
      write_atomic(ch_out, j.dump(2) + "\n");
    } else if (*cv) {
      const halo::Geometry gset = load_geometry(cv_set);
      const halo::Geometry gballs = load_geometry(cv_balls);
      if (gballs.balls.empty()) throw std::invalid_argument("no balls in '" + cv_balls + "'");
      const halo::DensityBallFamily family(gballs.balls, gset.boxes, cv_alpha,
                                           halo::McParams{cv_seed, cv_samples});
      const halo::SelectionResult res = halo::cf_select(family, cv_delta);
      const halo::CoverCheck cover =
          halo::dilation_cover_check(family, res, cv_cover_samples, cv_seed);
      const halo::TauberianCertificate cert = halo::tauberian_upper_from_selection(family, res);

      ordered_json j = envelope("cover", config_hash);
      j["alpha"] = cv_alpha;
      j["delta"] = cv_delta;
      j["dilation"] = res.dilation;
      j["set_measure"] = gset.boxes.measure().str();
      auto order = ordered_json::array();
      for (const auto& db : family.balls()) order.push_back(db.input_index);
      j["size_order_input_indices"] = std::move(order);
      j["selected"] = res.selected;
      j["flagged"] = res.flagged;
      auto pieces = ordered_json::array();
      for (std::size_t k = 0; k < res.selected.size(); ++k) {
        ordered_json p;
        p["index"] = res.selected[k];
        p["input_index"] = family.balls()[static_cast<std::size_t>(res.selected[k])].input_index;
        p["volume"] = res.pieces[k].value;
        p["band"] = res.pieces[k].error;
        p["in_set"] = res.pieces_in_set[k].value;
        p["in_set_band"] = res.pieces_in_set[k].error;
        pieces.push_back(std::move(p));
      }
      j["pieces"] = std::move(pieces);
      j["cover_samples"] = cover.samples;
      auto cexs = ordered_json::array();
      for (const auto& ce : cover.counterexamples)
        cexs.push_back({{"point", ce.point}, {"ball", ce.containing_ball}});
      j["cover_counterexamples"] = std::move(cexs);
      j["sum_pieces"] = cert.sum_pieces;
      j["sum_band"] = cert.sum_band;
      j["certified_upper"] = cert.certified_upper;
      j["theorem_rhs"] = cert.theorem_rhs;
      j["within_band"] = cert.within_band;
      write_atomic(cv_out, j.dump(2) + "\n");
    } else if (*sb) {
      const halo::SlabShape shape =
          sb_shape == "ball" ? halo::SlabShape::Ball : halo::SlabShape::CubePi4;
      const std::vector<double> alphas = halo::parse_alpha_ladder(sb_alphas);
      std::vector<std::pair<double, double>> pts;
      for (double a : alphas)
        pts.emplace_back(a, 1.0 + halo::slab_halo_height(shape, sb_n, a));
      ordered_json j = envelope("slab", config_hash);
      j["shape"] = sb_shape;
      j["n"] = sb_n;
      auto arr = ordered_json::array();
      for (const auto& [a, v] : pts) arr.push_back({{"alpha", a}, {"height", v - 1.0}});
      j["points"] = std::move(arr);
      std::optional<halo::ExponentFit> fit;
      if (sb_fit) {
        fit = halo::fit_exponent(pts);
        j["slope"] = fit->slope;
        j["intercept"] = fit->intercept;
        j["residual"] = fit->max_residual;
      }
      write_atomic(sb_out, j.dump(2) + "\n");
      const std::string svg_path =
          sb_svg.empty() ? std::filesystem::path(sb_out).replace_extension(".svg").string()
                         : sb_svg;
      write_atomic(svg_path, halo::render_loglog_svg(
                                 pts, fit, "slab protrusion: " + sb_shape + " n=" +
                                               std::to_string(sb_n)));
    } else if (*sw) {
      const halo::OperatorFamily family = halo::OperatorFamily::parse(sw_family);
      const halo::Geometry g = load_geometry(sw_set);
      halo::SweepOptions opts;
      opts.grid_step = parse_grid(sw_grid);
      opts.seed = sw_seed;
      opts.spec.ladder_sizes = sw_sizes;
      opts.spec.offsets_per_axis = sw_offsets;
      const auto records =
          halo::alpha_sweep(family, g.boxes, halo::parse_alpha_ladder(sw_alphas), opts);
      write_atomic(sw_out, halo::sweep_records_csv(records));
    } else if (*ft) {
      const auto records = halo::parse_sweep_csv(read_file(ft_in));
      const auto fit = halo::fit_exponent(halo::sweep_column(records, ft_col));
      ordered_json j = envelope("fit", config_hash);
      j["column"] = ft_col;
      j["points_used"] = fit.points.size();
      j["points_dropped"] = fit.dropped;
      j["slope"] = fit.slope;
      j["intercept"] = fit.intercept;
      j["residual"] = fit.max_residual;
      write_atomic(ft_out, j.dump(2) + "\n");
    } else if (*pl) {
      const auto records = halo::parse_sweep_csv(read_file(pl_in));
      const auto pts = halo::sweep_column(records, pl_col);
      std::optional<halo::ExponentFit> fit;
      if (pl_fit) fit = halo::fit_exponent(pts);
      write_atomic(pl_out, halo::render_loglog_svg(pts, fit, pl_title));
    }
  } catch (const IoError& e) {
    std::cerr << ordered_json{{"error", {{"code", kExitIo}, {"kind", "io"},
                                         {"message", e.what()}}}}.dump()
              << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << ordered_json{{"error", {{"code", kExitParse}, {"kind", "parse"},
                                         {"message", e.what()}}}}.dump()
              << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << ordered_json{{"error", {{"code", kExitDomain}, {"kind", "domain"},
                                         {"message", e.what()}}}}.dump()
              << "\n";
    return kExitDomain;
  }
  return 0;
}
