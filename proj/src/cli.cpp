#include "uavcrowd/cli.hpp"

#include "uavcrowd/bench.hpp"
#include "uavcrowd/metrics.hpp"
#include "uavcrowd/pipeline.hpp"
#include "uavcrowd/render.hpp"
#include "uavcrowd/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace uavcrowd
{
namespace
{
namespace fs = std::filesystem;

// Flag values that override the config file when given.
struct Overrides
{
  std::optional<double> focal_length_mm, pixel_size_um, assumed_height_m;
  std::optional<double> eps, risk_distance;
  std::optional<std::size_t> min_points;
  std::optional<double> alpha, safety_distance, depot_x, depot_y;
  std::optional<std::string> solver;
  bool no_correction = false;
  std::optional<std::size_t> ga_population, ga_generations, ga_elite, aco_colony, aco_iterations, exhaustive_cap;
  std::optional<double> ga_mutation_rate, aco_delta, aco_beta, aco_q, aco_rho;
};

struct Globals
{
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string output_dir = ".";
};

template <typename T>
void add_opt(CLI::App *app, std::string const &name, std::optional<T> &target, std::string const &help)
{
  app->add_option_function<T>(name, [&target](T const &v) { target = v; }, help);
}

void add_camera_flags(CLI::App *app, Overrides &o)
{
  add_opt(app, "--focal-length-mm", o.focal_length_mm, "Focal length [mm] (default 10)");
  add_opt(app, "--pixel-size-um", o.pixel_size_um, "Sensor pixel size [um] (default 18)");
  add_opt(app, "--assumed-height-m", o.assumed_height_m, "Assumed standing height [m] (default 1.75)");
  app->add_flag("--no-correction", o.no_correction, "Skip bounding-box height correction");
}

void add_cluster_flags(CLI::App *app, Overrides &o)
{
  add_opt(app, "--eps", o.eps, "DBSCAN radius [m] (default 2)");
  add_opt(app, "--min-points", o.min_points, "DBSCAN minimum points (default 3)");
  add_opt(app, "--risk-distance", o.risk_distance, "Distancing threshold for the risk score [m] (default 2)");
}

void add_planner_flags(CLI::App *app, Overrides &o)
{
  add_opt(app, "--solver", o.solver, "exhaustive, two-opt, ga, aco or all (default two-opt)");
  add_opt(app, "--alpha", o.alpha, "Priority weight in [0, 1] (default 0.99)");
  add_opt(app, "--depot-x", o.depot_x, "Depot x [m] (default 0)");
  add_opt(app, "--depot-y", o.depot_y, "Depot y [m] (default 0)");
  add_opt(app, "--exhaustive-cap", o.exhaustive_cap, "Largest node count for exhaustive search (default 11)");
  add_opt(app, "--ga-population", o.ga_population, "GA population (default 2 x node count)");
  add_opt(app, "--ga-generations", o.ga_generations, "GA generations (default 500)");
  add_opt(app, "--ga-mutation-rate", o.ga_mutation_rate, "GA swap mutation rate (default 0.1)");
  add_opt(app, "--ga-elite", o.ga_elite, "GA elite count (default 2)");
  add_opt(app, "--aco-colony", o.aco_colony, "ACO ants per iteration (default ceil((|C|-1)/2))");
  add_opt(app, "--aco-iterations", o.aco_iterations, "ACO iterations (default 200)");
  add_opt(app, "--aco-delta", o.aco_delta, "ACO pheromone exponent (default 1)");
  add_opt(app, "--aco-beta", o.aco_beta, "ACO visibility exponent (default 5)");
  add_opt(app, "--aco-q", o.aco_q, "ACO deposit intensity (default 10)");
  add_opt(app, "--aco-rho", o.aco_rho, "ACO evaporation (default 0.5)");
}

void add_inspection_flags(CLI::App *app, Overrides &o)
{
  add_opt(app, "--safety-distance", o.safety_distance, "Inspection safety distance [m] (default 2)");
}

template <typename T, typename U>
void apply(std::optional<T> const &v, U &target)
{
  if (v)
    target = static_cast<U>(*v);
}

PipelineConfig resolve_config(Globals const &g, Overrides const &o)
{
  PipelineConfig c;
  if (!g.config_path.empty())
    c = read_config_file(g.config_path, c);
  if (g.seed)
    c.seed = *g.seed;
  if (o.focal_length_mm) c.camera.focal_length_m = *o.focal_length_mm * 1e-3;
  if (o.pixel_size_um) c.camera.pixel_size_m = *o.pixel_size_um * 1e-6;
  apply(o.assumed_height_m, c.camera.assumed_height_m);
  apply(o.eps, c.cluster.eps);
  apply(o.min_points, c.cluster.min_points);
  apply(o.risk_distance, c.cluster.risk_distance);
  apply(o.alpha, c.alpha);
  apply(o.safety_distance, c.safety_distance);
  apply(o.depot_x, c.depot.x);
  apply(o.depot_y, c.depot.y);
  if (o.no_correction)
    c.correct_heights = false;
  if (o.solver)
  {
    c.all_solvers = *o.solver == "all";
    if (!c.all_solvers)
      c.solver = parse_solver(*o.solver);
  }
  apply(o.exhaustive_cap, c.solver_params.exhaustive_cap);
  apply(o.ga_population, c.solver_params.ga.population_size);
  apply(o.ga_generations, c.solver_params.ga.generations);
  apply(o.ga_mutation_rate, c.solver_params.ga.mutation_rate);
  apply(o.ga_elite, c.solver_params.ga.elite_count);
  apply(o.aco_colony, c.solver_params.aco.colony_size);
  apply(o.aco_iterations, c.solver_params.aco.iterations);
  apply(o.aco_delta, c.solver_params.aco.delta);
  apply(o.aco_beta, c.solver_params.aco.beta);
  apply(o.aco_q, c.solver_params.aco.q);
  apply(o.aco_rho, c.solver_params.aco.rho);
  c.validate();
  return c;
}

struct FrameArgs
{
  std::string meta;
  int width = 0;
  int height = 0;

  FrameSize resolve() const
  {
    if (!meta.empty())
      return read_frame_metadata(meta);
    if (width <= 0 || height <= 0)
      throw ConfigError("frame size required: pass --meta or --width and --height");
    return {width, height};
  }
};

void add_frame_flags(CLI::App *app, FrameArgs &f)
{
  app->add_option("--meta", f.meta, "Sidecar JSON with {\"width\": W, \"height\": H}");
  app->add_option("--width", f.width, "Frame width [px]");
  app->add_option("--height", f.height, "Frame height [px]");
}

json read_json_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read " + path);
  try
  {
    return json::parse(in);
  }
  catch (json::exception const &e)
  {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text(std::string const &path, std::string const &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out)
    throw std::runtime_error("failed writing " + path);
}

// --output FILE, or stdout when empty.
void emit(std::string const &output, std::string const &text, std::ostream &out)
{
  if (output.empty())
    out << text;
  else
    write_text(output, text);
}

std::vector<GroundPoint> read_points(std::string const &path)
{
  auto const j = read_json_file(path);
  json const &arr = j.is_object() ? j.at("ground_points") : j;
  std::vector<GroundPoint> pts;
  for (auto const &p : arr)
  {
    if (p.is_array())
      pts.push_back({p.at(0).get<double>(), p.at(1).get<double>(), 0.0});
    else
      pts.push_back(p.get<GroundPoint>());
  }
  return pts;
}

std::vector<Cluster> read_clusters(std::string const &path)
{
  auto const j = read_json_file(path);
  return (j.is_object() ? j.at("clusters") : j).get<std::vector<Cluster>>();
}

std::vector<BoundingBox> load_boxes(std::string const &path, FrameSize frame, std::vector<double> *scores)
{
  auto const parsed = read_annotation_file(path, frame.width, frame.height);
  std::vector<BoundingBox> boxes;
  for (auto const &a : human_annotations(parsed))
  {
    boxes.push_back(to_upward_box(a, frame.height));
    if (scores)
      scores->push_back(a.score);
  }
  return boxes;
}

// Frame large enough to hold every box of both files when no size is given.
FrameSize infer_frame(std::vector<std::string> const &paths)
{
  FrameSize size{1, 1};
  for (auto const &p : paths)
  {
    auto const frame = read_annotation_file(p, std::numeric_limits<int>::max() / 2, std::numeric_limits<int>::max() / 2);
    for (auto const &a : frame.annotations)
    {
      size.width = std::max(size.width, a.bbox_left + a.bbox_width);
      size.height = std::max(size.height, a.bbox_top + a.bbox_height);
    }
  }
  return size;
}

std::vector<double> parse_double_list(std::string const &text)
{
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    try
    {
      values.push_back(std::stod(item));
    }
    catch (std::exception const &)
    {
      throw ConfigError("not a number: " + item);
    }
  }
  return values;
}
}  // namespace

int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Crowd monitoring and UAV inspection planning from aerial detections", "uavcrowd"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--config", globals.config_path, "Flat JSON config; flags override it");
  app.add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { globals.seed = v; }, "RNG seed");
  app.add_option("--output-dir", globals.output_dir, "Directory for pipeline outputs");

  Overrides o;
  FrameArgs frame_args;
  std::string annotations, points_path, clusters_path, tour_path, report_path, output;
  std::string predictions, truths;
  double iou_threshold = 0.5;

  auto *pipeline = app.add_subcommand("pipeline", "Run ingest -> mapping -> clustering -> planning -> inspection");
  pipeline->add_option("--annotations", annotations, "Annotation file")->required();
  add_frame_flags(pipeline, frame_args);
  add_camera_flags(pipeline, o);
  add_cluster_flags(pipeline, o);
  add_planner_flags(pipeline, o);
  add_inspection_flags(pipeline, o);

  auto *map = app.add_subcommand("map", "Map human boxes to ground coordinates");
  map->add_option("--annotations", annotations, "Annotation file")->required();
  map->add_option("--output", output, "Output JSON (default stdout)");
  add_frame_flags(map, frame_args);
  add_camera_flags(map, o);

  auto *cluster = app.add_subcommand("cluster", "DBSCAN clustering and risk scores of ground points");
  cluster->add_option("--points", points_path, "JSON ground points (map output or [[x, y], ...])")->required();
  cluster->add_option("--output", output, "Output JSON (default stdout)");
  add_cluster_flags(cluster, o);

  auto *plan = app.add_subcommand("plan", "Plan the cluster tour");
  plan->add_option("--clusters", clusters_path, "Cluster JSON (cluster output)")->required();
  plan->add_option("--output", output, "Output JSON (default stdout)");
  add_planner_flags(plan, o);

  auto *inspect = app.add_subcommand("inspect", "Build inspection loops and the full trajectory");
  inspect->add_option("--clusters", clusters_path, "Cluster JSON (cluster output)")->required();
  inspect->add_option("--tour", tour_path, "Plan output JSON; cluster id order when omitted");
  inspect->add_option("--output", output, "Output JSON (default stdout)");
  add_inspection_flags(inspect, o);
  add_opt(inspect, "--depot-x", o.depot_x, "Depot x [m] (default 0)");
  add_opt(inspect, "--depot-y", o.depot_y, "Depot y [m] (default 0)");

  auto *deteval = app.add_subcommand("deteval", "Evaluate predictions against ground truth");
  deteval->add_option("--predictions", predictions, "Prediction annotation file (score = confidence)")->required();
  deteval->add_option("--truths", truths, "Ground-truth annotation file")->required();
  deteval->add_option("--iou-threshold", iou_threshold, "IoU match threshold (default 0.5)");
  deteval->add_option("--output", output, "Output JSON (default stdout)");
  add_frame_flags(deteval, frame_args);

  BenchmarkSpec bench_spec;
  std::size_t seed_count = 1;
  std::string alphas_text = "0.99";
  std::string solvers_text = "exhaustive,two-opt,ga,aco";
  auto *bench = app.add_subcommand("bench", "Solver benchmark over random instances (CSV)");
  bench->add_option("--min-nodes", bench_spec.instances.min_nodes, "Smallest |C| including the depot (default 4)");
  bench->add_option("--max-nodes", bench_spec.instances.max_nodes, "Largest |C| including the depot (default 9)");
  bench->add_option("--instances", bench_spec.instances.instances_per_seed, "Instances per seed (default 1)");
  bench->add_option("--seeds", seed_count, "Number of seeds, seed s = base seed + k (default 1)");
  bench->add_option("--alphas", alphas_text, "Comma-separated alpha values (default 0.99)");
  bench->add_option("--solvers", solvers_text, "Comma-separated solvers (default all four)");
  bench->add_option("--arena", bench_spec.instances.arena_m, "Arena side [m] (default 100)");
  bench->add_option("--jobs", bench_spec.jobs, "Worker threads (default 1)");
  bench->add_option("--output", output, "Output CSV (default stdout)");
  add_opt(bench, "--exhaustive-cap", o.exhaustive_cap, "Largest node count for exhaustive search (default 11)");
  add_opt(bench, "--ga-generations", o.ga_generations, "GA generations (default 500)");
  add_opt(bench, "--aco-iterations", o.aco_iterations, "ACO iterations (default 200)");

  auto *render = app.add_subcommand("render", "Render a pipeline report as SVG");
  render->add_option("--report", report_path, "report.json from the pipeline")->required();
  render->add_option("--output", output, "Output SVG (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try
  {
    if (pipeline->parsed())
    {
      auto const config = resolve_config(globals, o);
      auto const frame = frame_args.resolve();
      auto const report = run_pipeline_file(annotations, frame, config);
      fs::create_directories(globals.output_dir);
      fs::path const dir(globals.output_dir);
      write_text((dir / "report.json").string(), dump(report_to_json(report)));
      write_text((dir / "trajectory.json").string(), dump(json(report.trajectory)));
      write_text((dir / "timing.json").string(), dump(timings_to_json(report.timings)));
      write_svg(report, (dir / "render.svg").string());
      json summary{{"individuals", report.mapping.ground_points.size()},
                   {"clusters", report.clustering.clusters.size()},
                   {"outliers", report.clustering.outliers.size()},
                   {"parse_errors", report.parse_errors.size()},
                   {"tour_order", report.trajectory.tour_order},
                   {"total_length_m", report.trajectory.total_length},
                   {"output_dir", globals.output_dir}};
      out << dump(summary);
      for (auto const &e : report.parse_errors)
        err << annotations << ":" << e.line << ": " << e.message << "\n";
    }
    else if (map->parsed())
    {
      auto const config = resolve_config(globals, o);
      auto const frame = frame_args.resolve();
      auto const parsed = read_annotation_file(annotations, frame.width, frame.height);
      auto const boxes = filter_humans(parsed);
      auto const mapped = map_frame(boxes, config.camera, frame.width, config.correct_heights);
      json j{{"anchors", mapped.anchors}, {"ground_points", mapped.ground_points}};
      j["height_model"] = mapped.model ? json{{"coefficients", mapped.model->coefficients},
                                              {"residuals", mapped.model->residuals},
                                              {"sample_count", mapped.model->sample_count}}
                                       : json(nullptr);
      emit(output, dump(j), out);
    }
    else if (cluster->parsed())
    {
      auto const config = resolve_config(globals, o);
      auto const pts = read_points(points_path);
      auto const result = cluster_points(pts, config.cluster);
      emit(output, dump(json{{"clusters", result.clusters}, {"outliers", result.outliers}}), out);
    }
    else if (plan->parsed())
    {
      auto const config = resolve_config(globals, o);
      auto const clusters = read_clusters(clusters_path);
      if (clusters.empty())
      {
        emit(output, dump(json{{"tours", json::array()}, {"chosen", nullptr}, {"tour_order", json::array()}}), out);
        return kExitOk;
      }
      auto const graph = build_graph(clusters, config.depot, config.alpha);
      std::vector<Tour> tours;
      if (config.all_solvers)
      {
        for (auto s : {Solver::Exhaustive, Solver::TwoOpt, Solver::GA, Solver::ACO})
        {
          if (s == Solver::Exhaustive && graph.size() > config.solver_params.exhaustive_cap)
          {
            err << "exhaustive skipped: |C|=" << graph.size() << " exceeds cap " << config.solver_params.exhaustive_cap << "\n";
            continue;
          }
          tours.push_back(solve(graph, s, config.solver_params, config.seed));
        }
      }
      else
      {
        tours.push_back(solve(graph, config.solver, config.solver_params, config.seed));
      }
      auto const best = *std::min_element(tours.begin(), tours.end(),
                                          [](Tour const &a, Tour const &b) { return a.total_cost < b.total_cost; });
      json tour_list = json::array();
      for (auto const &t : tours)
      {
        json tj = t;
        tj["wall_time_s"] = t.wall_time_s;
        tour_list.push_back(std::move(tj));
      }
      emit(output,
           dump(json{{"alpha", config.alpha},
                     {"depot", config.depot},
                     {"tours", tour_list},
                     {"chosen", best},
                     {"tour_order", tour_cluster_ids(best, graph)}}),
           out);
    }
    else if (inspect->parsed())
    {
      auto const config = resolve_config(globals, o);
      auto const clusters = read_clusters(clusters_path);
      std::map<int, InspectionPath> paths;
      std::vector<int> order;
      for (auto const &c : clusters)
      {
        std::vector<Point2> pts;
        for (auto const &m : c.members)
          pts.push_back(m.planar());
        paths.emplace(c.id, offset_path(convex_hull(pts), config.safety_distance));
        order.push_back(c.id);
      }
      if (!tour_path.empty())
        order = read_json_file(tour_path).at("tour_order").get<std::vector<int>>();
      emit(output, dump(json(stitch_full_trajectory(order, paths, config.depot))), out);
    }
    else if (deteval->parsed())
    {
      FrameSize const frame = frame_args.meta.empty() && frame_args.width <= 0 ? infer_frame({predictions, truths})
                                                                                : frame_args.resolve();
      std::vector<double> scores;
      auto const pred_boxes = load_boxes(predictions, frame, &scores);
      auto const truth_boxes = load_boxes(truths, frame, nullptr);
      std::vector<ScoredBox> scored;
      for (std::size_t i = 0; i < pred_boxes.size(); ++i)
        scored.push_back({pred_boxes[i], scores[i]});
      if (truth_boxes.empty())
        throw DomainError("ground truth contains no human boxes; recall and AP are undefined");
      auto const match = match_detections(scored, truth_boxes, iou_threshold);
      double const ap = average_precision(precision_recall_curve(scored, truth_boxes, iou_threshold));
      json j{{"iou_threshold", iou_threshold},
             {"tp", match.counts.true_positives},
             {"fp", match.counts.false_positives},
             {"fn", match.counts.false_negatives},
             {"precision", precision(match.counts)},
             {"recall", recall(match.counts)},
             {"ap", ap},
             {"mean_iou", match.mean_matched_iou()},
             {"mean_iou_note", "mean IoU over matched (true-positive) pairs"}};
      emit(output, dump(j), out);
    }
    else if (bench->parsed())
    {
      auto const config = resolve_config(globals, o);
      bench_spec.params = config.solver_params;
      bench_spec.seeds.clear();
      for (std::size_t k = 0; k < seed_count; ++k)
        bench_spec.seeds.push_back(config.seed + k);
      bench_spec.alphas = parse_double_list(alphas_text);
      for (double a : bench_spec.alphas)
        if (!(a >= 0.0 && a <= 1.0))
          throw ConfigError("alpha must lie in [0, 1]");
      bench_spec.solvers.clear();
      std::stringstream ss(solvers_text);
      for (std::string name; std::getline(ss, name, ',');)
        bench_spec.solvers.push_back(parse_solver(name));
      if (bench_spec.instances.min_nodes < 2 || bench_spec.instances.max_nodes < bench_spec.instances.min_nodes)
        throw ConfigError("node range must satisfy 2 <= min-nodes <= max-nodes");

      auto const result = run_benchmark(bench_spec);
      for (auto const &n : result.notices)
        err << n << "\n";
      std::ostringstream csv;
      write_benchmark_csv(result, csv);
      emit(output, csv.str(), out);
    }
    else if (render->parsed())
    {
      auto const report = report_from_json(read_json_file(report_path));
      emit(output, render_svg(report), out);
    }
  }
  catch (ConfigError const &e)
  {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
}  // namespace uavcrowd
