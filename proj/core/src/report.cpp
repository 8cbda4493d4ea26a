#include "hffs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hffs {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

bool numeric(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct Keyed {
    std::string table;
    std::string key;
    bool operator<(const Keyed& o) const {
        if (table != o.table) return table < o.table;
        if (key.size() != o.key.size()) return key.size() < o.key.size();  // numeric keys
        return key < o.key;
    }
};

double original_gap(const ResultRow& r) {
    const double u = static_cast<double>(*r.ub);
    return 100.0 * (u - static_cast<double>(r.lb)) / u;
}

double real_gap(const ResultRow& r) {
    const double u = static_cast<double>(*r.ub);
    return 100.0 * (u - static_cast<double>(std::max(r.best_lb, r.lb))) / u;
}

double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

std::string fixed2(double v) {
    const double q = std::round(v * 100.0 + (v >= 0 ? 1e-9 : -1e-9));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", q / 100.0);
    return std::string(buf) == "-0.00" ? "0.00" : buf;
}

std::vector<ReportCell> aggregate(const std::vector<MethodResults>& methods) {
    if (methods.empty()) throw std::invalid_argument("report: no results given");
    bool any = false;
    std::vector<std::map<std::string, const ResultRow*>> by_name(methods.size());
    std::map<std::string, Time> best;
    for (std::size_t m = 0; m < methods.size(); ++m)
        for (const auto& r : methods[m].rows) {
            any = true;
            if (!by_name[m].emplace(r.instance, &r).second)
                throw std::invalid_argument("report: instance " + r.instance + " appears twice for " + methods[m].method);
            auto [it, fresh] = best.emplace(r.instance, r.best_lb);
            if (!fresh) it->second = std::max(it->second, r.best_lb);
        }
    if (!any) throw std::invalid_argument("report: no result rows");

    // group instances by table key
    std::map<Keyed, std::vector<std::string>> groups;
    for (const auto& [name, b] : best) {
        const auto parts = split(name, '_');
        if (!std::all_of(parts.begin(), parts.end(), numeric)) continue;
        if (parts.size() == 2) {
            groups[{"jobs", parts[0]}].push_back(name);
            groups[{"impact", parts[0]}].push_back(name);
        } else if (parts.size() == 3) {
            groups[{"stages", parts[1]}].push_back(name);
            groups[{"variant", parts[2]}].push_back(name);
        }
    }

    static const std::vector<std::string> order = {"jobs", "impact", "stages", "variant"};
    std::vector<std::pair<Keyed, std::vector<std::string>>> sorted(groups.begin(), groups.end());
    std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
        const auto ia = std::find(order.begin(), order.end(), a.first.table) - order.begin();
        const auto ib = std::find(order.begin(), order.end(), b.first.table) - order.begin();
        if (ia != ib) return ia < ib;
        return a.first < b.first;
    });

    std::vector<ReportCell> cells;
    for (const auto& [k, names] : sorted) {
        auto add = [&](const std::string& col, double v) { cells.push_back({k.table, k.key, col, v}); };
        auto solved_rows = [&](std::size_t m) {
            std::vector<const ResultRow*> out;
            for (const auto& n : names) {
                auto it = by_name[m].find(n);
                if (it != by_name[m].end() && it->second->ub) out.push_back(it->second);
            }
            return out;
        };
        std::vector<double> bl;
        for (const auto& n : names) bl.push_back(static_cast<double>(best.at(n)));
        const double best_avg = mean(bl);

        if (k.table == "jobs") {
            add("best_lb", best_avg);
            for (std::size_t m = 0; m < methods.size(); ++m) {
                const auto rows = solved_rows(m);
                const std::string& p = methods[m].method;
                if (!rows.empty()) {
                    std::vector<double> lb, ub, og, rg;
                    for (const auto* r : rows) {
                        lb.push_back(static_cast<double>(r->lb));
                        ub.push_back(static_cast<double>(*r->ub));
                        og.push_back(original_gap(*r));
                        rg.push_back(real_gap(*r));
                    }
                    add(p + "_lb", mean(lb));
                    add(p + "_ub", mean(ub));
                    add(p + "_original_gap", mean(og));
                    add(p + "_real_gap", mean(rg));
                }
                add(p + "_solved", static_cast<double>(rows.size()));
            }
        } else if (k.table == "impact") {
            for (std::size_t m = 0; m < methods.size(); ++m) {
                const auto rows = solved_rows(m);
                if (rows.empty() || best_avg <= 0) continue;
                std::vector<double> lb;
                for (const auto* r : rows) lb.push_back(static_cast<double>(r->lb));
                add(methods[m].method + "_diff", 100.0 * (best_avg - mean(lb)) / best_avg);
            }
        } else {
            std::set<std::string> common(names.begin(), names.end());
            for (std::size_t m = 0; m < methods.size(); ++m) {
                std::set<std::string> mine;
                for (const auto* r : solved_rows(m)) mine.insert(r->instance);
                std::set<std::string> keep;
                std::set_intersection(common.begin(), common.end(), mine.begin(), mine.end(), std::inserter(keep, keep.end()));
                common = std::move(keep);
            }
            for (std::size_t m = 0; m < methods.size(); ++m) {
                const auto rows = solved_rows(m);
                const std::string& p = methods[m].method;
                std::vector<double> g1, g2;
                for (const auto* r : rows) {
                    g2.push_back(original_gap(*r));
                    if (common.count(r->instance)) g1.push_back(original_gap(*r));
                }
                if (!g1.empty()) add(p + "_gap1", mean(g1));
                if (!g2.empty()) add(p + "_gap2", mean(g2));
                add(p + "_solved", static_cast<double>(rows.size()));
            }
        }
    }
    return cells;
}

std::string cells_to_csv(const std::vector<ReportCell>& cells) {
    std::ostringstream ss;
    ss << "table,key,column,value\n";
    for (const auto& c : cells) {
        const bool count = c.column.size() > 7 && c.column.compare(c.column.size() - 7, 7, "_solved") == 0;
        ss << c.table << ',' << c.key << ',' << c.column << ','
           << (count ? std::to_string(static_cast<long>(c.value)) : fixed2(c.value)) << '\n';
    }
    return ss.str();
}

std::string cells_to_text(const std::vector<ReportCell>& cells) {
    static const std::map<std::string, std::string> titles = {
        {"jobs", "Averages per number of jobs"},
        {"impact", "Impact of the lower bounds (Diff %)"},
        {"stages", "Average original gaps per number of stages"},
        {"variant", "Average original gaps per variant"},
    };
    std::ostringstream ss;
    std::size_t i = 0;
    while (i < cells.size()) {
        const std::string table = cells[i].table;
        std::vector<std::string> keys, cols;
        std::map<std::pair<std::string, std::string>, std::string> val;
        for (; i < cells.size() && cells[i].table == table; ++i) {
            const auto& c = cells[i];
            if (keys.empty() || keys.back() != c.key) keys.push_back(c.key);
            if (std::find(cols.begin(), cols.end(), c.column) == cols.end()) cols.push_back(c.column);
            const bool count = c.column.size() > 7 && c.column.compare(c.column.size() - 7, 7, "_solved") == 0;
            val[{c.key, c.column}] = count ? std::to_string(static_cast<long>(c.value)) : fixed2(c.value);
        }
        const std::string head = table == "jobs" || table == "impact" ? "|J|" : table == "stages" ? "|S|" : "variant";
        std::vector<std::size_t> w{head.size()};
        for (const auto& k : keys) w[0] = std::max(w[0], k.size());
        for (const auto& c : cols) {
            std::size_t x = c.size();
            for (const auto& k : keys) {
                auto it = val.find({k, c});
                if (it != val.end()) x = std::max(x, it->second.size());
            }
            w.push_back(x);
        }
        auto it = titles.find(table);
        ss << (it != titles.end() ? it->second : table) << '\n';
        auto pad = [&](const std::string& s, std::size_t n) { return std::string(n - s.size(), ' ') + s; };
        ss << pad(head, w[0]);
        for (std::size_t c = 0; c < cols.size(); ++c) ss << "  " << pad(cols[c], w[c + 1]);
        ss << '\n';
        for (const auto& k : keys) {
            ss << pad(k, w[0]);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                auto v = val.find({k, cols[c]});
                ss << "  " << pad(v != val.end() ? v->second : "-", w[c + 1]);
            }
            ss << '\n';
        }
        ss << '\n';
    }
    return ss.str();
}

}  // namespace hffs
