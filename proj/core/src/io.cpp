#include "hffs/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hffs {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw IoError(std::string(what) + ": " + e.what());
    }
}

void require_fields(const Json& j, const std::string& ctx, std::initializer_list<const char*> fields) {
    if (!j.is_object()) throw IoError(ctx + ": expected an object");
    std::set<std::string> known;
    for (const char* f : fields) {
        known.insert(f);
        if (!j.contains(f)) throw IoError(ctx + ": missing field '" + f + "'");
    }
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw IoError(ctx + ": unknown field '" + k + "'");
}

long long as_int(const Json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw IoError(ctx + ": expected an integer");
    return j.get<long long>();
}

const Json& as_array(const Json& j, const std::string& ctx) {
    if (!j.is_array()) throw IoError(ctx + ": expected an array");
    return j;
}

const Json& as_object(const Json& j, const std::string& ctx) {
    if (!j.is_object()) throw IoError(ctx + ": expected an object");
    return j;
}

int key_id(const std::string& key, const std::string& ctx) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(key, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != key.size()) throw IoError(ctx + ": key '" + key + "' is not an integer id");
    return v;
}

template <class F>
void per_key(const Json& obj, const std::string& ctx, F&& f) {
    for (const auto& [k, v] : as_object(obj, ctx).items()) f(key_id(k, ctx), v, ctx + "." + k);
}

std::string op_key(const Instance& inst, std::size_t j, std::size_t i) {
    return std::to_string(inst.job_ids[j]) + ":" + std::to_string(inst.stage_ids[static_cast<std::size_t>(inst.route[j][i])]);
}

Json interval_json(const Interval& iv) { return Json::array({iv.start, iv.end}); }

Interval interval_of(const Json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2) throw IoError(ctx + ": expected [start, end]");
    return {as_int(j[0], ctx), as_int(j[1], ctx)};
}

// 100 * num / den to two decimals, halves rounded away from zero; exact.
std::string percent(Time num, Time den) {
    const bool neg = num < 0;
    const Time a = neg ? -num : num;
    const Time q = (20000 * a + den) / (2 * den);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", neg && q ? "-" : "", static_cast<long long>(q / 100),
                  static_cast<long long>(q % 100));
    return buf;
}

Json opt(const std::optional<Time>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Instance instance_from_json(const std::string& text) {
    const Json j = parse(text, "instance");
    require_fields(j, "instance", {"jobs", "stages", "machines", "eligible_stages", "buffer_in", "buffer_out", "transport",
                                   "workers_total", "workers_min", "workers_max", "proc_time"});
    Instance inst;
    for (const auto& v : as_array(j["jobs"], "jobs")) inst.job_ids.push_back(static_cast<int>(as_int(v, "jobs")));
    for (const auto& v : as_array(j["stages"], "stages")) inst.stage_ids.push_back(static_cast<int>(as_int(v, "stages")));

    auto job_of = [&](int id, const std::string& ctx) {
        const int x = inst.job_index(id);
        if (x < 0) throw IoError(ctx + ": unknown job " + std::to_string(id));
        return static_cast<std::size_t>(x);
    };
    auto stage_of = [&](int id, const std::string& ctx) {
        const int x = inst.stage_index(id);
        if (x < 0) throw IoError(ctx + ": unknown stage " + std::to_string(id));
        return static_cast<std::size_t>(x);
    };
    auto machine_of = [&](int id, const std::string& ctx) {
        const int x = inst.machine_index(id);
        if (x < 0) throw IoError(ctx + ": unknown machine " + std::to_string(id));
        return static_cast<std::size_t>(x);
    };

    for (const auto& m : as_array(j["machines"], "machines")) {
        require_fields(m, "machines[]", {"id", "stage"});
        const int sid = static_cast<int>(as_int(m["stage"], "machines[].stage"));
        inst.machines.push_back({static_cast<int>(as_int(m["id"], "machines[].id")),
                                 static_cast<int>(stage_of(sid, "machines[].stage"))});
    }
    const std::size_t nj = inst.job_ids.size(), ns = inst.stage_ids.size(), nm = inst.machines.size();

    inst.route.assign(nj, {});
    std::vector<bool> have(nj, false);
    per_key(j["eligible_stages"], "eligible_stages", [&](int id, const Json& v, const std::string& ctx) {
        const std::size_t x = job_of(id, ctx);
        if (have[x]) throw IoError(ctx + ": duplicate job");
        have[x] = true;
        for (const auto& s : as_array(v, ctx))
            inst.route[x].push_back(static_cast<int>(stage_of(static_cast<int>(as_int(s, ctx)), ctx)));
    });
    for (std::size_t x = 0; x < nj; ++x)
        if (!have[x]) throw IoError("eligible_stages: no entry for job " + std::to_string(inst.job_ids[x]));

    auto per_machine = [&](const char* field, std::vector<int>& out) {
        out.assign(nm, 0);
        std::vector<bool> seen(nm, false);
        per_key(j[field], field, [&](int id, const Json& v, const std::string& ctx) {
            const std::size_t x = machine_of(id, ctx);
            seen[x] = true;
            out[x] = static_cast<int>(as_int(v, ctx));
        });
        for (std::size_t x = 0; x < nm; ++x)
            if (!seen[x]) throw IoError(std::string(field) + ": no entry for machine " + std::to_string(inst.machines[x].id));
    };
    per_machine("buffer_in", inst.buffer_in);
    per_machine("buffer_out", inst.buffer_out);

    inst.transport.assign(nm * nm, kNoTransport);
    for (const auto& t : as_array(j["transport"], "transport")) {
        require_fields(t, "transport[]", {"from", "to", "t"});
        const auto a = machine_of(static_cast<int>(as_int(t["from"], "transport[].from")), "transport[].from");
        const auto b = machine_of(static_cast<int>(as_int(t["to"], "transport[].to")), "transport[].to");
        if (inst.transport[a * nm + b] != kNoTransport)
            throw IoError("transport: duplicate entry " + std::to_string(inst.machines[a].id) + " -> " +
                          std::to_string(inst.machines[b].id));
        const Time v = as_int(t["t"], "transport[].t");
        if (v < 0) throw IoError("transport: negative time");
        inst.transport[a * nm + b] = v;
    }

    inst.workers_total = static_cast<int>(as_int(j["workers_total"], "workers_total"));
    auto per_stage = [&](const char* field, std::vector<int>& out) {
        out.assign(ns, 0);
        std::vector<bool> seen(ns, false);
        per_key(j[field], field, [&](int id, const Json& v, const std::string& ctx) {
            const std::size_t x = stage_of(id, ctx);
            seen[x] = true;
            out[x] = static_cast<int>(as_int(v, ctx));
        });
        for (std::size_t x = 0; x < ns; ++x)
            if (!seen[x]) throw IoError(std::string(field) + ": no entry for stage " + std::to_string(inst.stage_ids[x]));
    };
    per_stage("workers_min", inst.workers_min);
    per_stage("workers_max", inst.workers_max);
    for (std::size_t s = 0; s < ns; ++s)
        if (inst.workers_min[s] < 1 || inst.workers_max[s] < inst.workers_min[s] || inst.workers_max[s] > 64)
            throw IoError("workers_min/workers_max: bad window for stage " + std::to_string(inst.stage_ids[s]));

    inst.proc_time.assign(nj, std::vector<std::vector<Time>>(ns));
    for (std::size_t x = 0; x < nj; ++x)
        for (int s : inst.route[x]) {
            const auto su = static_cast<std::size_t>(s);
            inst.proc_time[x][su].assign(static_cast<std::size_t>(inst.workers_max[su] - inst.workers_min[su] + 1), 0);
        }
    for (const auto& p : as_array(j["proc_time"], "proc_time")) {
        require_fields(p, "proc_time[]", {"job", "stage", "w", "p"});
        const auto x = job_of(static_cast<int>(as_int(p["job"], "proc_time[].job")), "proc_time[].job");
        const auto s = stage_of(static_cast<int>(as_int(p["stage"], "proc_time[].stage")), "proc_time[].stage");
        const auto w = as_int(p["w"], "proc_time[].w");
        const std::string where = "proc_time: job " + std::to_string(inst.job_ids[x]) + " stage " +
                                  std::to_string(inst.stage_ids[s]) + " w " + std::to_string(w);
        auto& row = inst.proc_time[x][s];
        if (row.empty()) throw IoError(where + ": stage is not eligible for the job");
        if (w < inst.workers_min[s] || w > inst.workers_max[s]) throw IoError(where + ": outside the worker window");
        auto& cell = row[static_cast<std::size_t>(w - inst.workers_min[s])];
        if (cell != 0) throw IoError(where + ": duplicate entry");
        cell = as_int(p["p"], "proc_time[].p");
        if (cell < 1) throw IoError(where + ": time must be positive");
    }
    for (std::size_t x = 0; x < nj; ++x)
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t k = 0; k < inst.proc_time[x][s].size(); ++k)
                if (inst.proc_time[x][s][k] == 0)
                    throw IoError("proc_time: missing job " + std::to_string(inst.job_ids[x]) + " stage " +
                                  std::to_string(inst.stage_ids[s]) + " w " +
                                  std::to_string(inst.workers_min[s] + static_cast<int>(k)));
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    Json j;
    j["jobs"] = inst.job_ids;
    j["stages"] = inst.stage_ids;
    Json ms = Json::array();
    for (const auto& m : inst.machines) ms.push_back({{"id", m.id}, {"stage", inst.stage_ids[static_cast<std::size_t>(m.stage)]}});
    j["machines"] = ms;
    Json el = Json::object();
    for (std::size_t x = 0; x < inst.route.size(); ++x) {
        Json r = Json::array();
        for (int s : inst.route[x]) r.push_back(inst.stage_ids[static_cast<std::size_t>(s)]);
        el[std::to_string(inst.job_ids[x])] = r;
    }
    j["eligible_stages"] = el;
    Json bi = Json::object(), bo = Json::object();
    for (std::size_t m = 0; m < inst.machines.size(); ++m) {
        bi[std::to_string(inst.machines[m].id)] = inst.buffer_in[m];
        bo[std::to_string(inst.machines[m].id)] = inst.buffer_out[m];
    }
    j["buffer_in"] = bi;
    j["buffer_out"] = bo;
    Json tr = Json::array();
    const int nm = inst.num_machines();
    for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b)
            if (inst.transport_time(a, b) != kNoTransport)
                tr.push_back({{"from", inst.machines[static_cast<std::size_t>(a)].id},
                              {"to", inst.machines[static_cast<std::size_t>(b)].id},
                              {"t", inst.transport_time(a, b)}});
    j["transport"] = tr;
    j["workers_total"] = inst.workers_total;
    Json wmin = Json::object(), wmax = Json::object();
    for (std::size_t s = 0; s < inst.stage_ids.size(); ++s) {
        wmin[std::to_string(inst.stage_ids[s])] = inst.workers_min[s];
        wmax[std::to_string(inst.stage_ids[s])] = inst.workers_max[s];
    }
    j["workers_min"] = wmin;
    j["workers_max"] = wmax;
    Json pt = Json::array();
    for (std::size_t x = 0; x < inst.route.size(); ++x)
        for (int s : inst.route[x]) {
            const auto su = static_cast<std::size_t>(s);
            for (int w = inst.workers_min[su]; w <= inst.workers_max[su]; ++w)
                pt.push_back({{"job", inst.job_ids[x]}, {"stage", inst.stage_ids[su]}, {"w", w},
                              {"p", inst.proc(static_cast<int>(x), s, w)}});
        }
    j["proc_time"] = pt;
    return j.dump(2) + "\n";
}

Schedule schedule_from_json(const Instance& inst, const std::string& text) {
    const Json j = parse(text, "schedule");
    require_fields(j, "schedule", {"machine_of", "workers_of", "intervals", "makespan"});
    const std::size_t nj = inst.job_ids.size();
    std::map<std::string, std::pair<std::size_t, std::size_t>> ops;
    for (std::size_t x = 0; x < nj; ++x)
        for (std::size_t i = 0; i < inst.route[x].size(); ++i) ops[op_key(inst, x, i)] = {x, i};

    Schedule sched;
    sched.ops.resize(nj);
    for (std::size_t x = 0; x < nj; ++x) sched.ops[x].resize(inst.route[x].size());

    auto lookup = [&](const std::string& key, const char* field) {
        auto it = ops.find(key);
        if (it == ops.end())
            throw IoError(std::string("cross-reference: ") + field + " names operation '" + key +
                          "', which the instance does not have");
        return it->second;
    };
    auto check_cover = [&](const Json& obj, const char* field) {
        for (const auto& [key, pos] : ops)
            if (!obj.contains(key))
                throw IoError(std::string("cross-reference: ") + field + " has no entry for operation '" + key + "'");
    };

    const Json& mo = as_object(j["machine_of"], "machine_of");
    for (const auto& [k, v] : mo.items()) {
        const auto [x, i] = lookup(k, "machine_of");
        const int id = static_cast<int>(as_int(v, "machine_of." + k));
        const int m = inst.machine_index(id);
        if (m < 0) throw IoError("cross-reference: machine_of." + k + " names unknown machine " + std::to_string(id));
        sched.ops[x][i].machine = m;
    }
    check_cover(mo, "machine_of");
    const Json& wo = as_object(j["workers_of"], "workers_of");
    for (const auto& [k, v] : wo.items()) {
        const auto [x, i] = lookup(k, "workers_of");
        sched.ops[x][i].workers = static_cast<int>(as_int(v, "workers_of." + k));
    }
    check_cover(wo, "workers_of");
    const Json& iv = as_object(j["intervals"], "intervals");
    for (const auto& [k, v] : iv.items()) {
        const auto [x, i] = lookup(k, "intervals");
        const std::string ctx = "intervals." + k;
        require_fields(v, ctx, {"wb", "pr", "wa"});
        auto& op = sched.ops[x][i];
        op.wait_before = interval_of(v["wb"], ctx + ".wb");
        op.process = interval_of(v["pr"], ctx + ".pr");
        op.wait_after = interval_of(v["wa"], ctx + ".wa");
    }
    check_cover(iv, "intervals");
    sched.makespan = as_int(j["makespan"], "makespan");
    return sched;
}

std::string schedule_to_json(const Instance& inst, const Schedule& sched) {
    Json mo = Json::object(), wo = Json::object(), iv = Json::object();
    for (std::size_t x = 0; x < sched.ops.size(); ++x)
        for (std::size_t i = 0; i < sched.ops[x].size(); ++i) {
            const auto& op = sched.ops[x][i];
            const std::string k = op_key(inst, x, i);
            mo[k] = inst.machines[static_cast<std::size_t>(op.machine)].id;
            wo[k] = op.workers;
            iv[k] = {{"wb", interval_json(op.wait_before)}, {"pr", interval_json(op.process)}, {"wa", interval_json(op.wait_after)}};
        }
    Json j;
    j["machine_of"] = mo;
    j["workers_of"] = wo;
    j["intervals"] = iv;
    j["makespan"] = sched.makespan;
    return j.dump(2) + "\n";
}

std::string bounds_to_json(const BoundReport& rep) {
    Json j;
    j["lb1"] = rep.lb1;
    j["lb2"] = rep.lb2;
    j["lb3"] = rep.lb3;
    j["lb4"] = opt(rep.lb4);
    j["lb5"] = opt(rep.lb5);
    j["lb6"] = opt(rep.lb6);
    j["lb7"] = opt(rep.lb7);
    j["lb8"] = rep.lb8;
    j["best"] = rep.best;
    return j.dump(2) + "\n";
}

std::string runlog_to_json(const RunLog& log, bool timings) {
    Json its = Json::array();
    for (const auto& it : log.iterations) {
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016" PRIx64, it.jstar_hash);
        Json o;
        o["k"] = it.k;
        o["master_lb"] = it.master_lb;
        o["jstar_hash"] = hash;
        o["zeta"] = opt(it.zeta);
        o["sub_status"] = it.sub_status;
        o["cut"] = it.cut;
        o["lb"] = it.lb;
        o["ub"] = opt(it.ub);
        o["master_nodes"] = it.master_nodes;
        o["sub_nodes"] = it.sub_nodes;
        if (timings) {
            o["master_seconds"] = it.master_seconds;
            o["sub_seconds"] = it.sub_seconds;
        }
        its.push_back(o);
    }
    Json j;
    j["status"] = log.status;
    j["best_lb"] = log.best_lb;
    j["lb"] = log.lb;
    j["ub"] = opt(log.ub);
    j["nodes"] = log.nodes;
    j["stalled"] = log.stalled;
    if (timings) j["seconds"] = log.seconds;
    j["iterations"] = its;
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

const char* const kResultsHeader = "instance,best_lb,lb,ub,original_gap,real_gap,iterations,nodes,wall_time,status";

std::string to_csv_line(const ResultRow& row) {
    if (row.instance.find_first_of(",\n\"") != std::string::npos)
        throw IoError("instance name '" + row.instance + "' cannot go into the CSV");
    std::ostringstream ss;
    ss << row.instance << ',' << row.best_lb << ',' << row.lb << ',';
    if (row.ub && *row.ub > 0) {
        const Time ub = *row.ub;
        ss << ub << ',' << percent(ub - row.lb, ub) << ',' << percent(ub - std::max(row.best_lb, row.lb), ub);
    } else {
        ss << ",,";
    }
    char wt[32];
    std::snprintf(wt, sizeof wt, "%.3f", row.wall_time);
    ss << ',' << row.iterations << ',' << row.nodes << ',' << wt << ',' << row.status;
    return ss.str();
}

std::vector<ResultRow> parse_results_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<ResultRow> rows;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != kResultsHeader) throw IoError("results CSV: unexpected header '" + line + "'");
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        const std::string where = "results CSV line " + std::to_string(lineno);
        if (f.size() != 10) throw IoError(where + ": expected 10 columns");
        ResultRow r;
        try {
            r.instance = f[0];
            r.best_lb = std::stoll(f[1]);
            r.lb = f[2].empty() || f[2] == "-" ? 0 : std::stoll(f[2]);
            if (!f[3].empty() && f[3] != "-") r.ub = std::stoll(f[3]);
            r.iterations = f[6].empty() ? 0 : std::stoi(f[6]);
            r.nodes = f[7].empty() ? 0 : std::stol(f[7]);
            r.wall_time = f[8].empty() ? 0 : std::stod(f[8]);
        } catch (const std::exception&) {
            throw IoError(where + ": malformed number");
        }
        r.status = f[9];
        rows.push_back(std::move(r));
    }
    if (!header) throw IoError("results CSV: empty input");
    return rows;
}

}  // namespace hffs
