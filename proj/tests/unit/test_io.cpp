#include "doctest.h"

#include "builders.hpp"
#include "hffs/full_model.hpp"
#include "hffs/instance_gen.hpp"
#include "hffs/io.hpp"
#include "json.hpp"

using namespace hffs;
using testing_support::Builder;
using Json = nlohmann::json;

namespace {

std::string edit(const std::string& text, void (*f)(Json&)) {
    Json j = Json::parse(text);
    f(j);
    return j.dump();
}

}  // namespace

TEST_CASE("instance JSON round trip") {
    for (const GenSpec spec : {GenSpec{1, 6, 0, 0, 2}, GenSpec{2, 9, 3, 2, 5}}) {
        const auto inst = generate(spec);
        const std::string text = instance_to_json(inst);
        const auto back = instance_from_json(text);
        CHECK(instance_to_json(back) == text);
        CHECK(back.route == inst.route);
        CHECK(back.transport == inst.transport);
        CHECK(back.proc_time == inst.proc_time);
        CHECK(back.buffer_in == inst.buffer_in);
    }
}

TEST_CASE("instance JSON layout") {
    const auto inst = Builder({1, 1}, 2).windows(1, 2).nominal_job({{0, 4}, {1, 5}}).all_transport(3).build();
    const Json j = Json::parse(instance_to_json(inst));
    CHECK(j["jobs"] == Json::array({1}));
    CHECK(j["stages"] == Json::array({1, 2}));
    CHECK(j["machines"][1]["id"] == 2);
    CHECK(j["machines"][1]["stage"] == 2);
    CHECK(j["eligible_stages"]["1"] == Json::array({1, 2}));
    CHECK(j["transport"].size() == 1);
    CHECK(j["transport"][0]["t"] == 3);
    CHECK(j["workers_total"] == 2);
    CHECK(j["workers_max"]["2"] == 2);
    CHECK(j["proc_time"].size() == 4);
}

TEST_CASE("malformed instance JSON") {
    const std::string good = instance_to_json(generate({2, 3, 2, 1, 0}));
    CHECK_THROWS_AS(instance_from_json("{\"jobs\": [1,"), IoError);
    CHECK_THROWS_AS(instance_from_json("[]"), IoError);
    CHECK_THROWS_WITH_AS(instance_from_json(edit(good, [](Json& j) { j["colour"] = 1; })), doctest::Contains("colour"),
                         IoError);
    CHECK_THROWS_AS(instance_from_json(edit(good, [](Json& j) { j.erase("transport"); })), IoError);
    CHECK_THROWS_AS(instance_from_json(edit(good, [](Json& j) { j["workers_total"] = "eight"; })), IoError);
    CHECK_THROWS_AS(instance_from_json(edit(good, [](Json& j) { j["proc_time"].erase(0); })), IoError);
    CHECK_THROWS_AS(instance_from_json(edit(good, [](Json& j) { j["jobs"].push_back(1); })), IoError);
    CHECK_THROWS_AS(instance_from_json(edit(good, [](Json& j) { j["proc_time"][0]["w"] = 7; })), IoError);
}

TEST_CASE("schedule JSON round trip and cross references") {
    const auto inst = generate({2, 4, 2, 1, 3});
    const auto out = solve_full(inst);
    REQUIRE(out.schedule);
    const std::string text = schedule_to_json(inst, *out.schedule);
    const auto back = schedule_from_json(inst, text);
    CHECK(back == *out.schedule);
    CHECK(validate_schedule(inst, back).empty());

    const Json j = Json::parse(text);
    CHECK(j.contains("machine_of"));
    CHECK(j.contains("workers_of"));
    CHECK(j.contains("intervals"));
    CHECK(j["makespan"] == out.schedule->makespan);

    CHECK_THROWS_WITH_AS(schedule_from_json(inst, edit(text, [](Json& x) { x["machine_of"]["99:1"] = 1; })),
                         doctest::Contains("cross-reference"), IoError);
    CHECK_THROWS_WITH_AS(schedule_from_json(inst, edit(text, [](Json& x) {
                             x["machine_of"][x["machine_of"].begin().key()] = 1234;
                         })),
                         doctest::Contains("cross-reference"), IoError);
    const auto other = generate({2, 7, 3, 1, 3});
    CHECK_THROWS_WITH_AS(schedule_from_json(other, text), doctest::Contains("cross-reference"), IoError);
}

TEST_CASE("results CSV") {
    ResultRow r{"20_1", 44, 22, 48, 3, 120, 1.5, "feasible"};
    const std::string line = to_csv_line(r);
    CHECK(line == "20_1,44,22,48,54.17,8.33,3,120,1.500,feasible");
    ResultRow open{"400_1", 120, 90, std::nullopt, 2, 10, 0.25, "unknown"};
    CHECK(to_csv_line(open) == "400_1,120,90,,,,2,10,0.250,unknown");

    const std::string text = std::string(kResultsHeader) + "\n" + line + "\n\n" + to_csv_line(open) + "\n";
    const auto rows = parse_results_csv(text);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].instance == "20_1");
    CHECK(*rows[0].ub == 48);
    CHECK(rows[0].nodes == 120);
    CHECK(!rows[1].ub);
    CHECK_THROWS_AS(parse_results_csv("instance,lb\n1,2\n"), IoError);
    CHECK_THROWS_AS(parse_results_csv(std::string(kResultsHeader) + "\nx,1,2\n"), IoError);
}

TEST_CASE("half-way gaps round up") {
    // 15.625 and 33.125 are exact in binary
    CHECK(to_csv_line({"a", 0, 27, 32, 1, 0, 0, ""}).find(",15.63,") != std::string::npos);
    CHECK(to_csv_line({"b", 0, 107, 160, 1, 0, 0, ""}).find(",33.13,") != std::string::npos);
}

TEST_CASE("run log JSON leaves timings out by default") {
    RunLog log;
    log.status = "optimal";
    log.best_lb = 5;
    log.lb = 5;
    log.ub = 5;
    log.seconds = 1.25;
    IterationLog it;
    it.k = 1;
    it.jstar_hash = 0xabc;
    it.zeta = 5;
    it.ub = 5;
    it.sub_status = "optimal";
    it.cut = "optimality";
    it.master_seconds = 0.5;
    log.iterations.push_back(it);
    const Json a = Json::parse(runlog_to_json(log));
    CHECK(!a.contains("seconds"));
    CHECK(!a["iterations"][0].contains("master_seconds"));
    CHECK(a["iterations"][0]["jstar_hash"] == "0000000000000abc");
    const Json b = Json::parse(runlog_to_json(log, true));
    CHECK(b["seconds"] == 1.25);
}
