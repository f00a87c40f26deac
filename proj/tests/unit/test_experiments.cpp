#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpmult/experiment.hpp"
#include "lpmult/report.hpp"

using namespace lpmult;

namespace {

json base_config() {
  return json::parse(R"({
    "schema_version": 1,
    "kind": "theorem_probe",
    "set": {"generator": "dyadic_gap", "K": 6},
    "theta0": 0.5235987755982988,
    "model": {"type": "auto_poles", "deltas": [0.05, 0.02]},
    "p_list": [1.5],
    "N_list": [64, 128],
    "grid": {"mikhlin": 4096, "sup": 1024},
    "seed": 1
  })");
}

json small_norm_table() {
  return json::parse(R"({
    "schema_version": 1,
    "kind": "norm_table",
    "model": {"type": "pole_sum", "poles": [[2, 0], [0, -1.5]], "weights": [1, [0, 0.5]]},
    "p_list": [1.5, 3],
    "N_list": [16, 32, 64],
    "seed": 4
  })");
}

struct Mutation {
  std::string name;
  std::function<void(json&)> apply;
  std::string field;
};

std::vector<Mutation> corpus() {
  std::vector<Mutation> c;
  auto set = [&](std::string name, json::json_pointer ptr, json value, std::string field) {
    c.push_back({std::move(name), [ptr, value](json& j) { j[ptr] = value; }, std::move(field)});
  };
  auto drop = [&](std::string key, std::string field) {
    c.push_back({"drop " + key, [key](json& j) { j.erase(key); }, std::move(field)});
  };
  using P = json::json_pointer;

  drop("schema_version", "schema_version");
  drop("kind", "kind");
  drop("set", "set");
  drop("theta0", "theta0");
  drop("p_list", "p_list");
  drop("N_list", "N_list");
  for (const json& v : {json(0), json(2), json(-1), json("1"), json(1.5), json(nullptr)})
    set("schema " + v.dump(), P("/schema_version"), v, "schema_version");
  for (const json& v : {json("theorem"), json(""), json(3), json(nullptr), json::array()})
    set("kind " + v.dump(), P("/kind"), v, "kind");
  set("unknown key", P("/colour"), "red", "colour");
  set("unknown grid key", P("/grid/fine"), 10, "grid.fine");
  set("unknown set key", P("/set/extra"), 1, "set.extra");
  set("comment not string", P("/comment"), 5, "comment");
  set("set not object", P("/set"), 4, "set");
  set("set empty", P("/set"), json::object(), "set");
  set("generator number", P("/set/generator"), 1, "set.generator");
  set("generator unknown", P("/set/generator"), "cantor", "set.generator");
  for (const json& v : {json(0), json(-3), json(41), json(2.5), json("8"), json(nullptr)})
    set("dyadic K " + v.dump(), P("/set/K"), v, "set.K");
  c.push_back({"superlacunary K 6",
               [](json& j) { j["set"] = {{"generator", "superlacunary"}, {"K", 6}}; }, "set.K"});
  c.push_back({"generator without K", [](json& j) { j["set"].erase("K"); }, "set.K"});
  c.push_back({"explicit angles not array",
               [](json& j) { j["set"] = {{"angles", 1.0}}; }, "set.angles"});
  c.push_back({"explicit angle not number",
               [](json& j) { j["set"] = {{"angles", {0.0, "x", 3.0}}}; }, "set.angles[1]"});
  c.push_back({"explicit set with a wide gap",
               [](json& j) { j["set"] = {{"angles", {0.0, 1.0}}}; }, "set.angles"});
  c.push_back({"explicit angle infinite",
               [](json& j) { j["set"] = {{"angles", {0.0, std::numeric_limits<double>::infinity(), 3.0}}}; }, "set.angles[1]"});
  for (const json& v : {json(0.0), json(-0.1), json(1.5707963267948966), json(2.0), json("pi/6"), json(nullptr)})
    set("theta0 " + v.dump(), P("/theta0"), v, "theta0");
  c.push_back({"theta0 without set", [](json& j) {
                 j["kind"] = "norm_table";
                 j.erase("set");
                 j["model"] = {{"type", "blaschke"}, {"zeros", {0.5}}};
               }, "theta0"});
  set("model not object", P("/model"), "poles", "model");
  set("model without type", P("/model"), json::object(), "model.type");
  set("model type number", P("/model/type"), 3, "model.type");
  set("model type unknown", P("/model/type"), "rational", "model.type");
  set("deltas empty", P("/model/deltas"), json::array(), "model.deltas");
  set("deltas not array", P("/model/deltas"), 0.1, "model.deltas");
  set("delta zero", P("/model/deltas/1"), 0.0, "model.deltas[1]");
  set("delta negative", P("/model/deltas/0"), -0.1, "model.deltas[0]");
  set("delta too large", P("/model/deltas/0"), 2.0, "model.deltas[0]");
  set("delta string", P("/model/deltas/0"), "small", "model.deltas[0]");
  set("pole inside disk", P("/model"), json::parse(R"({"type":"pole_sum","poles":[[0.5,0]],"weights":[1]})"),
      "model.poles[0]");
  set("pole on circle", P("/model"), json::parse(R"({"type":"pole_sum","poles":[[0,1]],"weights":[1]})"),
      "model.poles[0]");
  set("pole weights mismatch", P("/model"), json::parse(R"({"type":"pole_sum","poles":[2,3],"weights":[1]})"),
      "model");
  set("pole list missing", P("/model"), json::parse(R"({"type":"pole_sum","weights":[1]})"), "model.poles");
  set("blaschke zero outside", P("/model"), json::parse(R"({"type":"blaschke","zeros":[[1.2,0]]})"),
      "model.zeros[0]");
  set("blaschke zero malformed", P("/model"), json::parse(R"({"type":"blaschke","zeros":[[0.1,0.2,0.3]]})"),
      "model.zeros[0]");
  set("polynomial coeffs string", P("/model"), json::parse(R"({"type":"polynomial","coeffs":"1,2"})"),
      "model.coeffs");
  set("product factors object", P("/model"), json::parse(R"({"type":"product","factors":{}})"),
      "model.factors");
  set("product bad factor", P("/model"),
      json::parse(R"({"type":"product","factors":[{"type":"singular_inner"},{"type":"x"}]})"),
      "model.factors[1].type");
  set("sum missing weights", P("/model"), json::parse(R"({"type":"sum","terms":[{"type":"singular_inner"}]})"),
      "model.weights");
  c.push_back({"norm_table without model", [](json& j) {
                 j["kind"] = "norm_table";
                 j.erase("model");
                 j.erase("set");
                 j.erase("theta0");
               }, "model"});
  c.push_back({"verbitskii with model", [](json& j) {
                 j["kind"] = "verbitskii_probe";
                 j.erase("theta0");
               }, "model"});
  c.push_back({"lp_constants with model", [](json& j) {
                 j["kind"] = "lp_constants";
                 j.erase("theta0");
               }, "model"});
  c.push_back({"auto poles without set", [](json& j) {
                 j["kind"] = "norm_table";
                 j.erase("set");
                 j.erase("theta0");
               }, "model"});
  set("p_list empty", P("/p_list"), json::array(), "p_list");
  set("p_list scalar", P("/p_list"), 2, "p_list");
  for (const json& v : {json(0.5), json(0), json(-2), json("infinity"), json("2"), json(nullptr), json(true)})
    set("p " + v.dump(), P("/p_list/0"), v, "p_list[0]");
  set("p duplicate", P("/p_list"), json::array({2, 3, 2}), "p_list[2]");
  set("p duplicate inf", P("/p_list"), json::array({"inf", 3, "inf"}), "p_list[2]");
  c.push_back({"lp_constants p = 1", [](json& j) {
                 j["kind"] = "lp_constants";
                 j.erase("theta0");
                 j.erase("model");
                 j["p_list"] = {4, 1};
               }, "p_list[1]"});
  c.push_back({"lp_constants p = inf", [](json& j) {
                 j["kind"] = "lp_constants";
                 j.erase("theta0");
                 j.erase("model");
                 j["p_list"] = {"inf"};
               }, "p_list[0]"});
  set("N_list empty", P("/N_list"), json::array(), "N_list");
  set("N_list object", P("/N_list"), json::object(), "N_list");
  for (const json& v : {json(0), json(-4), json(65537), json(12.5), json("64"), json(nullptr)})
    set("N " + v.dump(), P("/N_list/0"), v, "N_list[0]");
  set("N decreasing", P("/N_list"), json::array({128, 64}), "N_list[1]");
  set("N repeated", P("/N_list"), json::array({64, 64}), "N_list[1]");
  c.push_back({"lp_constants N not a power of two", [](json& j) {
                 j["kind"] = "lp_constants";
                 j.erase("theta0");
                 j.erase("model");
                 j["N_list"] = {256, 384};
               }, "N_list[1]"});
  c.push_back({"lp_constants N colliding", [](json& j) {
                 j["kind"] = "lp_constants";
                 j.erase("theta0");
                 j.erase("model");
                 j["N_list"] = {8, 64};
               }, "N_list[0]"});
  set("grid not object", P("/grid"), 4096, "grid");
  for (const json& v : {json(1000), json(0), json(5000000), json(-1), json("big")})
    set("mikhlin grid " + v.dump(), P("/grid/mikhlin"), v, "grid.mikhlin");
  for (const json& v : {json(8), json(1 << 23), json(2.5)}) set("sup grid " + v.dump(), P("/grid/sup"), v, "grid.sup");
  for (const json& v : {json(99), json(0), json(2000000), json("many")}) set("trials " + v.dump(), P("/trials"), v, "trials");
  for (const json& v : {json(-1), json("seed"), json(1.5)}) set("seed " + v.dump(), P("/seed"), v, "seed");
  set("tolerances not object", P("/tolerances"), 1e-8, "tolerances");
  for (const json& v : {json(0.0), json(-1e-8), json(1.0), json("tight")})
    set("boyd tol " + v.dump(), P("/tolerances/boyd"), v, "tolerances.boyd");
  for (const json& v : {json(0.0), json(2.0)}) set("norm2 tol " + v.dump(), P("/tolerances/norm2"), v, "tolerances.norm2");
  for (const json& v : {json(0), json(200000)})
    set("boyd iterations " + v.dump(), P("/tolerances/boyd_max_iter"), v, "tolerances.boyd_max_iter");
  for (const json& v : {json(0), json(1001)})
    set("boyd restarts " + v.dump(), P("/tolerances/boyd_restarts"), v, "tolerances.boyd_restarts");
  set("unknown tolerance", P("/tolerances/lanczos"), 1e-3, "tolerances.lanczos");
  c.push_back({"config is an array", [](json& j) { j = json::array(); }, "<root>"});
  c.push_back({"config is a string", [](json& j) { j = "theorem_probe"; }, "<root>"});
  return c;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("lpmult_test_" + name);
  std::filesystem::remove_all(d);
  return d;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_rows(const std::string& csv) {
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2) ++n;
  return n;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("the base configs are valid") {
    CHECK_NOTHROW(config_from_json(base_config()));
    CHECK_NOTHROW(config_from_json(small_norm_table()));
    for (const char* name : {"theorem_probe", "verbitskii_probe", "mikhlin_verify", "lp_constants", "norm_table"})
      CHECK_NOTHROW(load_config(std::string(LPMULT_CONFIG_DIR) + "/" + name + ".json"));
  }

  TEST_CASE("malformed configs name the offending field") {
    const auto c = corpus();
    CHECK(c.size() >= 100);
    for (const auto& m : c) {
      CAPTURE(m.name);
      json j = base_config();
      m.apply(j);
      std::string field;
      try {
        config_from_json(j);
      } catch (const ConfigError& e) {
        field = e.field();
      }
      CHECK(field == m.field);
    }
  }

  TEST_CASE("unreadable and unparsable files") {
    CHECK_THROWS_AS(load_config("/nonexistent/lpmult.json"), ConfigError);
    const auto d = scratch_dir("parse");
    std::filesystem::create_directories(d);
    write_text_file(d / "bad.json", "{\"kind\": ");
    CHECK_THROWS_AS(load_config((d / "bad.json").string()), ConfigError);
  }

  TEST_CASE("normalised echo round trips") {
    const auto cfg = config_from_json(base_config());
    const json echo = config_to_json(cfg);
    CHECK(config_to_json(config_from_json(echo)) == echo);
    CHECK(echo.at("trials") == 100);
    CHECK(echo.at("tolerances").at("boyd") == 1e-8);
  }

  TEST_CASE("auto poles sit above flagged points") {
    const auto set = generate_dyadic_gap(4);
    const auto m = auto_pole_model(set, AutoPoles{{0.1}});
    const auto d = build_star_domain(set, kPi / 6);
    CHECK(is_bounded_on(m, d));
    CHECK(std::abs(eval(m, 0.0) - 0.1 / 1.1) <= 1e-15);
  }

  TEST_CASE("pole inside the domain is refused by name") {
    json j = base_config();
    const cplx w = std::polar(1.05, 0.75 * kPi);
    REQUIRE(build_star_domain(generate_dyadic_gap(6), kPi / 6).contains(w));
    j["model"] = {{"type", "pole_sum"}, {"poles", {{w.real(), w.imag()}}}, {"weights", {1}}};
    bool thrown = false;
    try {
      run(config_from_json(j));
    } catch (const UnboundedModelError& e) {
      thrown = true;
      const std::string msg = e.what();
      CHECK(msg.find("singularity") != std::string::npos);
      CHECK(msg.find("inside the domain") != std::string::npos);
    }
    CHECK(thrown);
  }

  TEST_CASE("norm table cells, csv rows and determinism") {
    const auto cfg = config_from_json(small_norm_table());
    const Report a = run(cfg);
    const Report b = run(cfg, RunHooks{nullptr, 1});
    CHECK(a.cells.size() == 6);
    const std::string csv = to_csv(a);
    CHECK(csv.rfind(std::string(kCsvHeader) + "\r\n", 0) == 0);
    CHECK(count_rows(csv) == 7);
    CHECK(csv == to_csv(b));
    CHECK(to_json_text(a) == to_json_text(b));
    for (const auto& cell : a.cells) {
      const auto& est = std::get<NormEstimate>(cell);
      CHECK(est.lower <= est.upper * (1 + 1e-9));
    }
  }

  TEST_CASE("report json round trip") {
    const Report a = run(config_from_json(small_norm_table()));
    const Report back = report_from_json(json::parse(to_json_text(a)));
    CHECK(back.config == a.config);
    CHECK(back.summary == a.summary);
    CHECK(back.version == a.version);
    CHECK(back.platform == a.platform);
    REQUIRE(back.cells.size() == a.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
      const auto& x = std::get<NormEstimate>(a.cells[i]);
      const auto& y = std::get<NormEstimate>(back.cells[i]);
      CHECK(x.p == y.p);
      CHECK(x.N == y.N);
      CHECK(x.lower == y.lower);
      CHECK(x.upper == y.upper);
      CHECK(x.lower_method == y.lower_method);
      CHECK(x.upper_method == y.upper_method);
      CHECK(x.iterations == y.iterations);
      CHECK(x.seed == y.seed);
    }
    CHECK(to_csv(back) == to_csv(a));
  }

  TEST_CASE("empty report gives the header only") {
    Report r;
    CHECK(to_csv(r) == std::string(kCsvHeader) + "\r\n");
    CHECK(to_svg(r).find("no norm cells") != std::string::npos);
  }

  TEST_CASE("verbitskii probe stays contractive at p = 2") {
    const json j = json::parse(R"({
      "schema_version": 1, "kind": "verbitskii_probe",
      "set": {"generator": "dyadic_gap", "K": 6},
      "p_list": [2, 4], "N_list": [64, 128, 256]
    })");
    const Report r = run(config_from_json(j));
    REQUIRE(r.cells.size() == 6);
    for (const auto& cell : r.cells) {
      const auto& est = std::get<NormEstimate>(cell);
      if (est.p == 2.0) CHECK(est.lower <= 1.0 + 1e-6);
      CHECK(est.lower >= 1.0 - 1e-6);
    }
  }

  TEST_CASE("mikhlin verify on the constant symbol") {
    const json j = json::parse(R"({
      "schema_version": 1, "kind": "mikhlin_verify",
      "set": {"generator": "dyadic_gap", "K": 8}, "theta0": 0.5235987755982988,
      "model": {"type": "polynomial", "coeffs": [1]}
    })");
    const Report r = run(config_from_json(j));
    REQUIRE(r.cells.size() == 1);
    const auto& m = std::get<MikhlinReport>(r.cells[0]);
    CHECK(m.margin == 0.0);
    CHECK(r.summary.at("mikhlin_margin_ok") == true);
  }

  TEST_CASE("lp constants cells") {
    const json j = json::parse(R"({
      "schema_version": 1, "kind": "lp_constants",
      "set": {"generator": "dyadic_gap", "K": 4},
      "p_list": [1.5, 4], "N_list": [64, 128], "trials": 100, "seed": 7
    })");
    const Report r = run(config_from_json(j));
    REQUIRE(r.cells.size() == 4);
    for (const auto& cell : r.cells) {
      const auto& e = std::get<LPConstantsReport>(cell);
      CHECK(e.ratio_min <= e.ratio_max);
      CHECK(e.trials == 100);
    }
    const std::string csv = to_csv(r);
    CHECK(csv.find("lp_constants,") != std::string::npos);
  }

  TEST_CASE("emit writes files and reports unwritable paths") {
    const auto d = scratch_dir("emit");
    const Report r = run(config_from_json(small_norm_table()));
    for (const auto f : {OutputFormat::csv, OutputFormat::json, OutputFormat::svg}) {
      const auto path = emit(r, f, d, "table");
      CHECK(path == d / ("table." + extension(f)));
      CHECK(std::filesystem::file_size(path) > 0);
    }
    CHECK(slurp(d / "table.csv") == to_csv(r));
    write_text_file(d / "blocker", "x");
    CHECK_THROWS_AS(emit(r, OutputFormat::csv, d / "blocker" / "sub", "table"), std::runtime_error);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
  }
}
