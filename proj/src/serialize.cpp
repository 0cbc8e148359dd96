#include "uavcrowd/serialize.hpp"

#include <fstream>

namespace uavcrowd
{
void to_json(json &j, Point2 const &p) { j = json::array({p.x, p.y}); }
void from_json(json const &j, Point2 &p)
{
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
}

void to_json(json &j, GroundPoint const &p) { j = json{{"x", p.x}, {"y", p.y}, {"z", p.z}}; }
void from_json(json const &j, GroundPoint &p)
{
  p.x = j.at("x").get<double>();
  p.y = j.at("y").get<double>();
  p.z = j.value("z", 0.0);
}

void to_json(json &j, BoundingBox const &b)
{
  j = json{{"x_left", b.x_left}, {"y_top", b.y_top}, {"w", b.w}, {"h", b.h}};
}
void from_json(json const &j, BoundingBox &b)
{
  b.x_left = j.at("x_left").get<double>();
  b.y_top = j.at("y_top").get<double>();
  b.w = j.at("w").get<double>();
  b.h = j.at("h").get<double>();
}

void to_json(json &j, Anchor const &a)
{
  j = json{{"x_center", a.x_center}, {"y_bottom", a.y_bottom}, {"h", a.h}};
  j["h_c"] = a.h_c ? json(*a.h_c) : json(nullptr);
  if (a.correction_rejected)
    j["correction_rejected"] = true;
}
void from_json(json const &j, Anchor &a)
{
  a.x_center = j.at("x_center").get<double>();
  a.y_bottom = j.at("y_bottom").get<double>();
  a.h = j.at("h").get<double>();
  if (j.contains("h_c") && !j["h_c"].is_null())
    a.h_c = j["h_c"].get<double>();
  a.correction_rejected = j.value("correction_rejected", false);
}

void to_json(json &j, Cluster const &c)
{
  j = json{{"id", c.id},
           {"size", c.size},
           {"risk", c.risk},
           {"barycenter", c.barycenter},
           {"member_indices", c.member_indices},
           {"members", c.members}};
}
void from_json(json const &j, Cluster &c)
{
  c.id = j.at("id").get<int>();
  c.members = j.at("members").get<std::vector<GroundPoint>>();
  c.member_indices = j.value("member_indices", std::vector<std::size_t>{});
  c.size = j.value("size", c.members.size());
  c.risk = j.at("risk").get<double>();
  c.barycenter = j.contains("barycenter") ? j["barycenter"].get<Point2>() : barycenter(c.members);
}

void to_json(json &j, Tour const &t)
{
  j = json{{"solver", std::string(to_string(t.solver))}, {"order", t.order}, {"total_cost", t.total_cost}};
}
void from_json(json const &j, Tour &t)
{
  t.solver = parse_solver(j.at("solver").get<std::string>());
  t.order = j.at("order").get<std::vector<std::size_t>>();
  t.total_cost = j.at("total_cost").get<double>();
}

void to_json(json &j, ConvexHull const &h) { j = json{{"points", h.points}, {"barycenter", h.barycenter}}; }
void from_json(json const &j, ConvexHull &h)
{
  h.points = j.at("points").get<std::vector<Point2>>();
  h.barycenter = j.at("barycenter").get<Point2>();
}

void to_json(json &j, PathElement const &e)
{
  if (auto const *s = std::get_if<Segment>(&e))
  {
    j = json{{"type", "segment"}, {"start", s->start}, {"end", s->end}, {"length_m", s->length()}};
    return;
  }
  auto const &a = std::get<Arc>(e);
  j = json{{"type", "arc"},
           {"center", a.center},
           {"radius", a.radius},
           {"start_angle", a.start_angle},
           {"sweep", a.sweep},
           {"length_m", a.length()}};
}
void from_json(json const &j, PathElement &e)
{
  auto const type = j.at("type").get<std::string>();
  if (type == "segment")
    e = Segment{j.at("start").get<Point2>(), j.at("end").get<Point2>()};
  else if (type == "arc")
    e = Arc{j.at("center").get<Point2>(), j.at("radius").get<double>(), j.at("start_angle").get<double>(),
            j.at("sweep").get<double>()};
  else
    throw DomainError("unknown path element type: " + type);
}

void to_json(json &j, InspectionPath const &p)
{
  j = json{{"elements", p.elements}, {"length_m", p.total_length}, {"safety_distance_m", p.safety_distance}};
}
void from_json(json const &j, InspectionPath &p)
{
  p.elements = j.at("elements").get<std::vector<PathElement>>();
  p.safety_distance = j.value("safety_distance_m", 0.0);
  p.total_length = 0.0;
  for (auto const &e : p.elements)
    p.total_length += element_length(e);
}

void to_json(json &j, FullTrajectory const &t)
{
  json legs = json::array();
  for (auto const &l : t.legs)
    legs.push_back({{"from", l.from}, {"to", l.to}, {"start", l.start}, {"end", l.end}, {"length_m", l.length}});
  json loops = json::array();
  for (auto const &l : t.loops)
    loops.push_back({{"cluster_id", l.cluster_id}, {"elements", l.path.elements}, {"length_m", l.path.total_length}});
  j = json{{"depot", t.depot},
           {"tour_order", t.tour_order},
           {"legs", legs},
           {"loops", loops},
           {"transit_length_m", t.transit_length},
           {"inspection_length_m", t.inspection_length},
           {"total_length_m", t.total_length}};
}
void from_json(json const &j, FullTrajectory &t)
{
  t = {};
  t.depot = j.at("depot").get<Point2>();
  t.tour_order = j.at("tour_order").get<std::vector<int>>();
  for (auto const &l : j.at("legs"))
    t.legs.push_back({l.at("from").get<int>(), l.at("to").get<int>(), l.at("start").get<Point2>(),
                      l.at("end").get<Point2>(), l.at("length_m").get<double>()});
  for (auto const &l : j.at("loops"))
  {
    InspectionLoop loop;
    loop.cluster_id = l.at("cluster_id").get<int>();
    loop.path.elements = l.at("elements").get<std::vector<PathElement>>();
    for (auto const &e : loop.path.elements)
      loop.path.total_length += element_length(e);
    t.loops.push_back(std::move(loop));
  }
  for (auto const &l : t.legs)
    t.transit_length += l.length;
  for (auto const &l : t.loops)
    t.inspection_length += l.path.total_length;
  t.total_length = t.transit_length + t.inspection_length;
}

void apply_config_json(json const &j, PipelineConfig &c)
{
  if (!j.is_object())
    throw ConfigError("config must be a flat JSON object");
  try
  {
    for (auto const &[key, v] : j.items())
    {
      if (key == "focal_length_mm") c.camera.focal_length_m = v.get<double>() * 1e-3;
      else if (key == "pixel_size_um") c.camera.pixel_size_m = v.get<double>() * 1e-6;
      else if (key == "assumed_height_m") c.camera.assumed_height_m = v.get<double>();
      else if (key == "eps") c.cluster.eps = v.get<double>();
      else if (key == "min_points") c.cluster.min_points = v.get<std::size_t>();
      else if (key == "risk_distance") c.cluster.risk_distance = v.get<double>();
      else if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "safety_distance") c.safety_distance = v.get<double>();
      else if (key == "correct_heights") c.correct_heights = v.get<bool>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "depot_x") c.depot.x = v.get<double>();
      else if (key == "depot_y") c.depot.y = v.get<double>();
      else if (key == "solver")
      {
        auto const name = v.get<std::string>();
        c.all_solvers = name == "all";
        if (!c.all_solvers)
          c.solver = parse_solver(name);
      }
      else if (key == "exhaustive_cap") c.solver_params.exhaustive_cap = v.get<std::size_t>();
      else if (key == "ga_population") c.solver_params.ga.population_size = v.get<std::size_t>();
      else if (key == "ga_generations") c.solver_params.ga.generations = v.get<std::size_t>();
      else if (key == "ga_mutation_rate") c.solver_params.ga.mutation_rate = v.get<double>();
      else if (key == "ga_elite") c.solver_params.ga.elite_count = v.get<std::size_t>();
      else if (key == "aco_colony") c.solver_params.aco.colony_size = v.get<std::size_t>();
      else if (key == "aco_iterations") c.solver_params.aco.iterations = v.get<std::size_t>();
      else if (key == "aco_delta") c.solver_params.aco.delta = v.get<double>();
      else if (key == "aco_beta") c.solver_params.aco.beta = v.get<double>();
      else if (key == "aco_q") c.solver_params.aco.q = v.get<double>();
      else if (key == "aco_rho") c.solver_params.aco.rho = v.get<double>();
      else throw ConfigError("unknown config key: " + key);
    }
  }
  catch (json::exception const &e)
  {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }
}

json config_to_json(PipelineConfig const &c)
{
  return json{{"focal_length_mm", c.camera.focal_length_m * 1e3},
              {"pixel_size_um", c.camera.pixel_size_m * 1e6},
              {"assumed_height_m", c.camera.assumed_height_m},
              {"eps", c.cluster.eps},
              {"min_points", c.cluster.min_points},
              {"risk_distance", c.cluster.risk_distance},
              {"alpha", c.alpha},
              {"safety_distance", c.safety_distance},
              {"correct_heights", c.correct_heights},
              {"seed", c.seed},
              {"depot_x", c.depot.x},
              {"depot_y", c.depot.y},
              {"solver", c.all_solvers ? std::string("all") : std::string(to_string(c.solver))},
              {"exhaustive_cap", c.solver_params.exhaustive_cap},
              {"ga_population", c.solver_params.ga.population_size},
              {"ga_generations", c.solver_params.ga.generations},
              {"ga_mutation_rate", c.solver_params.ga.mutation_rate},
              {"ga_elite", c.solver_params.ga.elite_count},
              {"aco_colony", c.solver_params.aco.colony_size},
              {"aco_iterations", c.solver_params.aco.iterations},
              {"aco_delta", c.solver_params.aco.delta},
              {"aco_beta", c.solver_params.aco.beta},
              {"aco_q", c.solver_params.aco.q},
              {"aco_rho", c.solver_params.aco.rho}};
}

PipelineConfig read_config_file(std::string const &path, PipelineConfig base)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file: " + path);
  json j;
  try
  {
    j = json::parse(in);
  }
  catch (json::exception const &e)
  {
    throw ConfigError("malformed config file " + path + ": " + e.what());
  }
  apply_config_json(j, base);
  return base;
}

json report_to_json(PipelineReport const &r)
{
  json errors = json::array();
  for (auto const &e : r.parse_errors)
    errors.push_back({{"line", e.line}, {"message", e.message}});

  json model = nullptr;
  if (r.mapping.model)
    model = json{{"coefficients", r.mapping.model->coefficients},
                 {"residuals", r.mapping.model->residuals},
                 {"sample_count", r.mapping.model->sample_count}};

  json paths = json::array();
  for (auto const &[id, p] : r.inspection_paths)
  {
    json entry = p;
    entry["cluster_id"] = id;
    paths.push_back(std::move(entry));
  }

  return json{{"source_id", r.source_id},
              {"frame", {{"width", r.frame_width}, {"height", r.frame_height}}},
              {"parse_errors", errors},
              {"boxes", r.boxes},
              {"anchors", r.mapping.anchors},
              {"height_model", model},
              {"ground_points", r.mapping.ground_points},
              {"clusters", r.clustering.clusters},
              {"outliers", r.clustering.outliers},
              {"tours", r.tours},
              {"chosen_tour", r.chosen_tour ? json(*r.chosen_tour) : json(nullptr)},
              {"hulls", r.hulls},
              {"inspection_paths", paths},
              {"trajectory", r.trajectory}};
}

PipelineReport report_from_json(json const &j)
{
  PipelineReport r;
  r.source_id = j.value("source_id", std::string{});
  if (j.contains("frame"))
  {
    r.frame_width = j["frame"].value("width", 0);
    r.frame_height = j["frame"].value("height", 0);
  }
  for (auto const &e : j.value("parse_errors", json::array()))
    r.parse_errors.push_back({e.at("line").get<std::size_t>(), e.at("message").get<std::string>()});
  r.boxes = j.value("boxes", std::vector<BoundingBox>{});
  r.mapping.anchors = j.value("anchors", std::vector<Anchor>{});
  if (j.contains("height_model") && !j["height_model"].is_null())
  {
    QuadraticHeightModel m;
    m.coefficients = j["height_model"].at("coefficients").get<std::array<double, 3>>();
    m.residuals = j["height_model"].at("residuals").get<std::vector<double>>();
    m.sample_count = j["height_model"].at("sample_count").get<std::size_t>();
    r.mapping.model = m;
  }
  r.mapping.ground_points = j.value("ground_points", std::vector<GroundPoint>{});
  r.clustering.clusters = j.value("clusters", std::vector<Cluster>{});
  r.clustering.outliers = j.value("outliers", std::vector<std::size_t>{});
  r.tours = j.value("tours", std::vector<Tour>{});
  if (j.contains("chosen_tour") && !j["chosen_tour"].is_null())
    r.chosen_tour = j["chosen_tour"].get<Tour>();
  r.hulls = j.value("hulls", std::vector<ConvexHull>{});
  for (auto const &p : j.value("inspection_paths", json::array()))
    r.inspection_paths.emplace(p.at("cluster_id").get<int>(), p.get<InspectionPath>());
  if (j.contains("trajectory"))
    r.trajectory = j["trajectory"].get<FullTrajectory>();
  return r;
}

json timings_to_json(StageTimings const &t)
{
  return json{{"ingest_s", t.ingest_s},
              {"mapping_s", t.mapping_s},
              {"clustering_s", t.clustering_s},
              {"planning_s", t.planning_s},
              {"inspection_s", t.inspection_s},
              {"total_s", t.total_s}};
}

std::string dump(json const &j) { return j.dump(2) + "\n"; }
}  // namespace uavcrowd
