#include "hffs/engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hffs::engine {

int Model::add_choice(std::string name, std::vector<Time> values) {
    choices.push_back({std::move(name), std::move(values)});
    return static_cast<int>(choices.size()) - 1;
}

int Model::add_task(TaskVar t) {
    tasks.push_back(std::move(t));
    return static_cast<int>(tasks.size()) - 1;
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Feasible: return "feasible";
        case Status::Infeasible: return "infeasible";
        case Status::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

using Mask = std::uint64_t;

std::size_t choice_size(const Model& m, int c) { return m.choices[static_cast<std::size_t>(c)].values.size(); }

Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

void check_term(const Model& m, const Term& t, const std::string& where) {
    const int nc = static_cast<int>(m.choices.size());
    if (t.a >= nc || t.b >= nc || (t.a < 0 && t.b >= 0))
        throw std::invalid_argument(where + ": term refers to an unknown choice");
    std::size_t want = 1;
    if (t.a >= 0) want = choice_size(m, t.a);
    if (t.b >= 0) want *= choice_size(m, t.b);
    if (t.table.size() != want) throw std::invalid_argument(where + ": lookup table has the wrong size");
}

void check_literal(const Model& m, const Literal& l, const std::string& where) {
    if (l.choice < 0) return;
    if (l.choice >= static_cast<int>(m.choices.size()) || l.index < 0 ||
        l.index >= static_cast<int>(choice_size(m, l.choice)))
        throw std::invalid_argument(where + ": literal refers to an unknown choice value");
}

Time term_value(const Model& m, const Term& t, const std::vector<int>& choice) {
    if (t.a < 0) return t.table[0];
    const auto ia = static_cast<std::size_t>(choice[static_cast<std::size_t>(t.a)]);
    if (t.b < 0) return t.table[ia];
    const auto ib = static_cast<std::size_t>(choice[static_cast<std::size_t>(t.b)]);
    return t.table[ia * choice_size(m, t.b) + ib];
}

bool literal_holds(const Literal& l, const std::vector<int>& choice) {
    return l.choice < 0 || choice[static_cast<std::size_t>(l.choice)] == l.index;
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Time default_horizon(const Model& m) {
    Time est = 0;
    Time total = 0;
    for (const auto& t : m.tasks) {
        est = std::max(est, t.est);
        if (t.free_duration) {
            if (t.free_max < kInf) total += t.free_max;
        } else {
            total += *std::max_element(t.duration.table.begin(), t.duration.table.end());
        }
    }
    for (const auto& o : m.offsets) total += std::max<Time>(0, *std::max_element(o.delta.table.begin(), o.delta.table.end()));
    for (const auto& p : m.precedences)
        total += std::max<Time>(0, *std::max_element(p.delta.table.begin(), p.delta.table.end()));
    return std::min(kInf, est + total + m.objective_floor);
}

enum class DecisionKind { ChoiceEq, ChoiceNeq, StartLe, StartGe, EndLe, EndGe };

struct Decision {
    DecisionKind kind;
    int var;
    Time value;
};

class Solver {
public:
    Solver(const Model& m, const SearchParams& p) : m_(m), params_(p) {
        const std::size_t nt = m.tasks.size();
        horizon_ = m.horizon < kInf ? m.horizon : default_horizon(m);
        sL_.resize(nt);
        sU_.resize(nt);
        eL_.resize(nt);
        eU_.resize(nt);
        dL_.resize(nt);
        dU_.resize(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            const auto& t = m.tasks[i];
            sL_[i] = t.est;
            eL_[i] = t.est;
            eU_[i] = std::min(t.lct, horizon_);
            sU_[i] = eU_[i];
            if (t.free_duration) {
                dL_[i] = t.free_min;
                dU_[i] = std::min(t.free_max, horizon_);
            } else {
                dL_[i] = *std::min_element(t.duration.table.begin(), t.duration.table.end());
                dU_[i] = *std::max_element(t.duration.table.begin(), t.duration.table.end());
            }
        }
        dom_.resize(m.choices.size());
        for (std::size_t c = 0; c < m.choices.size(); ++c) dom_[c] = full_mask(m.choices[c].values.size());
        cL_ = m.objective_floor;
        // ends stay within the horizon, the objective may not
        cU_ = std::max(horizon_, m.objective_floor);
        for (const auto& cb : m.conditionals)
            if (cb.zeta < kInf) cU_ = std::max(cU_, cb.zeta);
        cutoff_ = kInf;

        related_.resize(nt);
        auto relate = [&](int task, const Term& t) {
            if (t.a >= 0) related_[task].push_back(t.a);
            if (t.b >= 0) related_[task].push_back(t.b);
        };
        for (std::size_t i = 0; i < nt; ++i) relate(static_cast<int>(i), m.tasks[i].duration);
        for (const auto& r : m.resources)
            for (const auto& e : r.entries) {
                relate(e.task, e.weight);
                if (e.active.choice >= 0) related_[e.task].push_back(e.active.choice);
            }
        for (const auto& o : m.offsets) {
            relate(o.after, o.delta);
            relate(o.before, o.delta);
        }
        for (const auto& pr : m.precedences) {
            relate(pr.after, pr.delta);
            relate(pr.before, pr.delta);
        }
        for (auto& v : related_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    SearchResult run();

private:
    // trailed updates
    void set_time(std::vector<Time>& v, std::size_t i, Time x) {
        trail_.push_back({&v[i], v[i]});
        v[i] = x;
        changed_ = true;
    }
    bool raise(std::vector<Time>& v, std::size_t i, Time x) {
        if (x > v[i]) set_time(v, i, std::min(x, kInf));
        return true;
    }
    bool lower(std::vector<Time>& v, std::size_t i, Time x) {
        if (x < v[i]) set_time(v, i, x);
        return true;
    }
    bool raise_cl(Time x) {
        if (x > cL_) {
            trail_.push_back({&cL_, cL_});
            cL_ = std::min(x, kInf);
            changed_ = true;
        }
        return cL_ <= cU_;
    }
    bool lower_cu(Time x) {
        if (x < cU_) {
            trail_.push_back({&cU_, cU_});
            cU_ = x;
            changed_ = true;
        }
        return cL_ <= cU_;
    }
    bool set_dom(int c, Mask d) {
        auto& cur = dom_[static_cast<std::size_t>(c)];
        if (d == cur) return true;
        dtrail_.push_back({&cur, cur});
        cur = d;
        changed_ = true;
        return d != 0;
    }
    bool remove_value(int c, int idx) { return set_dom(c, dom_[static_cast<std::size_t>(c)] & ~(Mask{1} << idx)); }
    bool fix_value(int c, int idx) { return set_dom(c, dom_[static_cast<std::size_t>(c)] & (Mask{1} << idx)); }
    bool allowed(int c, int idx) const { return (dom_[static_cast<std::size_t>(c)] >> idx) & 1U; }
    bool fixed_choice(int c) const { return std::has_single_bit(dom_[static_cast<std::size_t>(c)]); }
    int fixed_index(int c) const { return std::countr_zero(dom_[static_cast<std::size_t>(c)]); }

    // 1 holds, 0 false, 2 undecided
    int literal_state(const Literal& l) const {
        if (l.choice < 0) return 1;
        if (!allowed(l.choice, l.index)) return 0;
        return fixed_choice(l.choice) ? 1 : 2;
    }

    Time term_min(const Term& t) const;
    Time term_max(const Term& t) const;
    // Removes values of the term's choices whose every completion falls outside [lo, hi].
    bool filter_term(const Term& t, Time lo, Time hi);

    bool task_bounds(std::size_t i);
    bool prop_offset(const OffsetLink& o);
    bool prop_precedence(const Precedence& p);
    bool prop_objective();
    bool prop_conditionals();
    bool prop_timetable(const Cumulative& r);
    bool prop_disjunctive(const Cumulative& r);
    bool prop_energy(const Cumulative& r);
    bool propagate();

    bool apply(const Decision& d);
    // Picks the next branching decision; returns false when the node failed
    // during value probing.
    bool choose(Decision& left, Decision& right, bool& leaf, bool& pruned);
    Solution extract() const;
    void undo(std::size_t tmark, std::size_t dmark);

    const Model& m_;
    const SearchParams& params_;
    Time horizon_ = kInf;
    std::vector<Time> sL_, sU_, eL_, eU_, dL_, dU_;
    std::vector<Mask> dom_;
    Time cL_ = 0, cU_ = kInf;
    Time cutoff_ = kInf;  // incumbent - 1, survives backtracking
    bool changed_ = false;
    std::vector<std::pair<Time*, Time>> trail_;
    std::vector<std::pair<Mask*, Mask>> dtrail_;
    std::vector<std::vector<int>> related_;
};

template <class F>
void for_each_value(Mask d, F&& f) {
    while (d) {
        const int i = std::countr_zero(d);
        f(i);
        d &= d - 1;
    }
}

Time Solver::term_min(const Term& t) const {
    if (t.a < 0) return t.table[0];
    Time best = kInf;
    if (t.b < 0) {
        for_each_value(dom_[static_cast<std::size_t>(t.a)], [&](int i) { best = std::min(best, t.table[static_cast<std::size_t>(i)]); });
        return best;
    }
    const std::size_t nb = choice_size(m_, t.b);
    for_each_value(dom_[static_cast<std::size_t>(t.a)], [&](int i) {
        for_each_value(dom_[static_cast<std::size_t>(t.b)],
                       [&](int k) { best = std::min(best, t.table[static_cast<std::size_t>(i) * nb + static_cast<std::size_t>(k)]); });
    });
    return best;
}

Time Solver::term_max(const Term& t) const {
    if (t.a < 0) return t.table[0];
    Time best = -kInf;
    if (t.b < 0) {
        for_each_value(dom_[static_cast<std::size_t>(t.a)], [&](int i) { best = std::max(best, t.table[static_cast<std::size_t>(i)]); });
        return best;
    }
    const std::size_t nb = choice_size(m_, t.b);
    for_each_value(dom_[static_cast<std::size_t>(t.a)], [&](int i) {
        for_each_value(dom_[static_cast<std::size_t>(t.b)],
                       [&](int k) { best = std::max(best, t.table[static_cast<std::size_t>(i) * nb + static_cast<std::size_t>(k)]); });
    });
    return best;
}

bool Solver::filter_term(const Term& t, Time lo, Time hi) {
    if (t.a < 0) return t.table[0] >= lo && t.table[0] <= hi;
    if (t.b < 0) {
        Mask keep = 0;
        for_each_value(dom_[static_cast<std::size_t>(t.a)], [&](int i) {
            const Time v = t.table[static_cast<std::size_t>(i)];
            if (v >= lo && v <= hi) keep |= Mask{1} << i;
        });
        return set_dom(t.a, keep);
    }
    const std::size_t nb = choice_size(m_, t.b);
    Mask keep_a = 0, keep_b = 0;
    for_each_value(dom_[static_cast<std::size_t>(t.a)], [&](int i) {
        for_each_value(dom_[static_cast<std::size_t>(t.b)], [&](int k) {
            const Time v = t.table[static_cast<std::size_t>(i) * nb + static_cast<std::size_t>(k)];
            if (v >= lo && v <= hi) {
                keep_a |= Mask{1} << i;
                keep_b |= Mask{1} << k;
            }
        });
    });
    return set_dom(t.a, keep_a) && set_dom(t.b, keep_b);
}

bool Solver::task_bounds(std::size_t i) {
    const auto& t = m_.tasks[i];
    if (!t.free_duration && t.duration.a >= 0) {
        if (!filter_term(t.duration, dL_[i], dU_[i])) return false;
        raise(dL_, i, term_min(t.duration));
        lower(dU_, i, term_max(t.duration));
    }
    for (int pass = 0; pass < 2; ++pass) {
        raise(eL_, i, sL_[i] + dL_[i]);
        lower(eU_, i, sU_[i] + dU_[i]);
        raise(sL_, i, eL_[i] - dU_[i]);
        lower(sU_, i, eU_[i] - dL_[i]);
        raise(dL_, i, eL_[i] - sU_[i]);
        lower(dU_, i, eU_[i] - sL_[i]);
    }
    return sL_[i] <= sU_[i] && eL_[i] <= eU_[i] && dL_[i] <= dU_[i];
}

bool Solver::prop_offset(const OffsetLink& o) {
    const auto a = static_cast<std::size_t>(o.after);
    const auto b = static_cast<std::size_t>(o.before);
    if (!filter_term(o.delta, sL_[a] - eU_[b], sU_[a] - eL_[b])) return false;
    const Time lo = term_min(o.delta), hi = term_max(o.delta);
    raise(sL_, a, eL_[b] + lo);
    lower(sU_, a, eU_[b] + hi);
    raise(eL_, b, sL_[a] - hi);
    lower(eU_, b, sU_[a] - lo);
    return sL_[a] <= sU_[a] && eL_[b] <= eU_[b];
}

bool Solver::prop_precedence(const Precedence& p) {
    const auto a = static_cast<std::size_t>(p.before);
    const auto b = static_cast<std::size_t>(p.after);
    if (!filter_term(p.delta, -kInf, sU_[b] - eL_[a])) return false;
    const Time lo = term_min(p.delta);
    raise(sL_, b, eL_[a] + lo);
    lower(eU_, a, sU_[b] - lo);
    return sL_[b] <= sU_[b] && eL_[a] <= eU_[a];
}

bool Solver::prop_objective() {
    if (!raise_cl(m_.objective_floor)) return false;
    if (!lower_cu(cutoff_)) return false;
    for (int t : m_.objective_tasks) {
        const auto i = static_cast<std::size_t>(t);
        if (!raise_cl(eL_[i])) return false;
        lower(eU_, i, cU_);
        if (eL_[i] > eU_[i]) return false;
    }
    return true;
}

bool Solver::prop_conditionals() {
    for (const auto& cb : m_.conditionals) {
        int undecided = 0;
        const Literal* open = nullptr;
        bool dead = false;
        for (const auto& l : cb.when) {
            const int st = literal_state(l);
            if (st == 0) {
                dead = true;
                break;
            }
            if (st == 2) {
                ++undecided;
                open = &l;
                if (undecided > 1) break;
            }
        }
        if (dead || undecided > 1) continue;
        if (undecided == 0) {
            if (cb.zeta >= kInf) return false;
            if (!raise_cl(cb.zeta)) return false;
        } else if (cb.zeta > cU_) {
            if (!remove_value(open->choice, open->index)) return false;
        }
    }
    return true;
}

namespace {

struct Segment {
    Time from, to;
    Time level;
};

// Step profile of summed weights from [start, end) parts; only positive
// levels are kept, sorted by time.
std::vector<Segment> build_profile(std::vector<std::pair<Time, Time>>& events) {
    std::sort(events.begin(), events.end());
    std::vector<Segment> out;
    Time level = 0;
    for (std::size_t k = 0; k < events.size();) {
        const Time t = events[k].first;
        while (k < events.size() && events[k].first == t) level += events[k++].second;
        if (k < events.size() && level > 0) out.push_back({t, events[k].first, level});
    }
    return out;
}

}  // namespace

bool Solver::prop_timetable(const Cumulative& r) {
    const std::size_t ne = r.entries.size();
    std::vector<int> state(ne);
    std::vector<Time> wmin(ne);
    // contribution of each entry to the profile, as built
    std::vector<Time> pw(ne, 0), pfrom(ne, 0), pto(ne, 0);
    std::vector<std::pair<Time, Time>> events;
    for (std::size_t k = 0; k < ne; ++k) {
        const auto& e = r.entries[k];
        state[k] = literal_state(e.active);
        wmin[k] = state[k] == 0 ? 0 : term_min(e.weight);
        const auto i = static_cast<std::size_t>(e.task);
        if (state[k] == 1 && wmin[k] > 0 && sU_[i] < eL_[i]) {
            pw[k] = wmin[k];
            pfrom[k] = sU_[i];
            pto[k] = eL_[i];
            events.push_back({sU_[i], wmin[k]});
            events.push_back({eL_[i], -wmin[k]});
        }
    }
    const auto prof = build_profile(events);
    for (std::size_t k = 0; k < ne; ++k) {
        if (state[k] == 0) continue;
        const auto& e = r.entries[k];
        const auto i = static_cast<std::size_t>(e.task);
        if (dU_[i] == 0) continue;
        auto excl = [&](const Segment& s) {
            return s.level - ((pw[k] > 0 && s.from >= pfrom[k] && s.to <= pto[k]) ? pw[k] : 0);
        };
        // Highest level met by the compulsory part, other entries only.
        if (sU_[i] < eL_[i]) {
            Time peak = 0;
            for (const auto& s : prof)
                if (s.to > sU_[i] && s.from < eL_[i]) peak = std::max(peak, excl(s));
            const Time room = r.capacity - peak;
            if (state[k] == 2) {
                if (wmin[k] > room && !remove_value(e.active.choice, e.active.index)) return false;
                continue;
            }
            if (e.weight.a >= 0) {
                if (!filter_term(e.weight, 0, room)) return false;
                wmin[k] = term_min(e.weight);
            } else if (wmin[k] > room) {
                return false;
            }
        }
        // a zero-length run overlaps nothing
        if (state[k] != 1 || wmin[k] == 0 || dL_[i] == 0) continue;
        const Time w = wmin[k];
        if (w > r.capacity) return false;

        // earliest start
        Time s0 = sL_[i];
        for (bool moved = true; moved;) {
            moved = false;
            const Time end = std::max(s0 + dL_[i], eL_[i]);
            if (end <= s0) break;
            for (std::size_t q = 0; q < prof.size(); ++q) {
                const auto& s = prof[q];
                if (s.to <= s0) continue;
                if (s.from >= end) break;
                if (excl(s) + w > r.capacity) {
                    Time next = s.to;
                    for (std::size_t z = q + 1; z < prof.size() && prof[z].from == next && excl(prof[z]) + w > r.capacity; ++z)
                        next = prof[z].to;
                    s0 = next;
                    moved = true;
                    break;
                }
            }
            if (s0 > sU_[i]) return false;
        }
        raise(sL_, i, s0);

        // latest end
        Time e0 = eU_[i];
        for (bool moved = true; moved;) {
            moved = false;
            const Time begin = std::min(e0 - dL_[i], sU_[i]);
            if (e0 <= begin) break;
            for (std::size_t q = prof.size(); q-- > 0;) {
                const auto& s = prof[q];
                if (s.from >= e0) continue;
                if (s.to <= begin) break;
                if (excl(s) + w > r.capacity) {
                    Time prev = s.from;
                    for (std::size_t z = q; z-- > 0 && prof[z].to == prev && excl(prof[z]) + w > r.capacity;)
                        prev = prof[z].from;
                    e0 = prev;
                    moved = true;
                    break;
                }
            }
            if (e0 < eL_[i]) return false;
        }
        lower(eU_, i, e0);
        if (!task_bounds(i)) return false;
    }
    return true;
}

bool Solver::prop_disjunctive(const Cumulative& r) {
    std::vector<std::size_t> sure;
    for (const auto& e : r.entries) {
        const auto i = static_cast<std::size_t>(e.task);
        if (literal_state(e.active) == 1 && dL_[i] > 0 && term_min(e.weight) > 0) sure.push_back(i);
    }
    for (std::size_t x = 0; x < sure.size(); ++x) {
        for (std::size_t y = x + 1; y < sure.size(); ++y) {
            const auto i = sure[x], j = sure[y];
            const bool i_first = eL_[i] <= sU_[j];
            const bool j_first = eL_[j] <= sU_[i];
            if (!i_first && !j_first) return false;
            if (i_first && !j_first) {
                raise(sL_, j, eL_[i]);
                lower(eU_, i, sU_[j]);
            } else if (j_first && !i_first) {
                raise(sL_, i, eL_[j]);
                lower(eU_, j, sU_[i]);
            }
            if (sL_[i] > sU_[i] || sL_[j] > sU_[j] || eL_[i] > eU_[i] || eL_[j] > eU_[j]) return false;
        }
    }
    return true;
}

// Overload check on windows [est_a, lct_b]: the energy of entries that must run
// inside cannot exceed capacity times the window length.
bool Solver::prop_energy(const Cumulative& r) {
    struct Item {
        Time est, lct, energy;
    };
    std::vector<Item> items;
    for (const auto& e : r.entries) {
        if (literal_state(e.active) != 1) continue;
        const auto i = static_cast<std::size_t>(e.task);
        if (dL_[i] == 0) continue;
        Time energy = kInf;
        const auto& dur = m_.tasks[i].duration;
        if (e.weight.a >= 0 && !m_.tasks[i].free_duration && dur.a == e.weight.a) {
            for_each_value(dom_[static_cast<std::size_t>(dur.a)], [&](int v) {
                const auto vi = static_cast<std::size_t>(v);
                energy = std::min(energy, e.weight.table[vi] * std::max(dur.table[vi], dL_[i]));
            });
        } else {
            energy = term_min(e.weight) * dL_[i];
        }
        if (energy > 0) items.push_back({sL_[i], eU_[i], energy});
    }
    if (items.size() < 2) return true;
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.lct < b.lct; });
    std::vector<Time> starts;
    for (const auto& it : items) starts.push_back(it.est);
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (Time t1 : starts) {
        Time acc = 0;
        for (const auto& it : items) {
            if (it.est < t1) continue;
            acc += it.energy;
            if (acc > r.capacity * (it.lct - t1)) return false;
        }
    }
    return true;
}

bool Solver::propagate() {
    const std::size_t nt = m_.tasks.size();
    int rounds = 0;
    do {
        changed_ = false;
        for (std::size_t i = 0; i < nt; ++i)
            if (!task_bounds(i)) return false;
        for (const auto& o : m_.offsets)
            if (!prop_offset(o)) return false;
        for (const auto& p : m_.precedences)
            if (!prop_precedence(p)) return false;
        if (!prop_objective()) return false;
        if (!prop_conditionals()) return false;
        if (changed_) continue;
        for (const auto& r : m_.resources) {
            if (!prop_timetable(r)) return false;
            if (r.disjunctive && !prop_disjunctive(r)) return false;
        }
        if (changed_) continue;
        for (const auto& r : m_.resources)
            if (!prop_energy(r)) return false;
        ++rounds;
    } while (changed_);
    (void)rounds;
    return true;
}

bool Solver::apply(const Decision& d) {
    const auto i = static_cast<std::size_t>(d.var);
    switch (d.kind) {
        case DecisionKind::ChoiceEq: return fix_value(d.var, static_cast<int>(d.value));
        case DecisionKind::ChoiceNeq: return remove_value(d.var, static_cast<int>(d.value));
        case DecisionKind::StartLe: lower(sU_, i, d.value); return sL_[i] <= sU_[i];
        case DecisionKind::StartGe: raise(sL_, i, d.value); return sL_[i] <= sU_[i];
        case DecisionKind::EndLe: lower(eU_, i, d.value); return eL_[i] <= eU_[i];
        case DecisionKind::EndGe: raise(eL_, i, d.value); return eL_[i] <= eU_[i];
    }
    return false;
}

void Solver::undo(std::size_t tmark, std::size_t dmark) {
    while (trail_.size() > tmark) {
        *trail_.back().first = trail_.back().second;
        trail_.pop_back();
    }
    while (dtrail_.size() > dmark) {
        *dtrail_.back().first = dtrail_.back().second;
        dtrail_.pop_back();
    }
}

bool Solver::choose(Decision& left, Decision& right, bool& leaf, bool& pruned) {
    leaf = false;
    pruned = false;
    int pick = -1;
    Time best_key = kInf;
    for (std::size_t i = 0; i < m_.tasks.size(); ++i) {
        Time key;
        if (sL_[i] != sU_[i]) key = sL_[i];
        else if (eL_[i] != eU_[i]) key = eL_[i];
        else continue;
        if (key < best_key) {
            best_key = key;
            pick = static_cast<int>(i);
        }
    }
    int branch_choice = -1;
    if (pick >= 0) {
        for (int c : related_[static_cast<std::size_t>(pick)])
            if (!fixed_choice(c)) {
                branch_choice = c;
                break;
            }
    } else {
        for (std::size_t c = 0; c < dom_.size(); ++c)
            if (!fixed_choice(static_cast<int>(c))) {
                branch_choice = static_cast<int>(c);
                break;
            }
        if (branch_choice < 0) {
            leaf = true;
            return true;
        }
    }

    if (branch_choice >= 0) {
        // Probe each value and keep the one giving the task the earliest end.
        const auto tmark = trail_.size();
        const auto dmark = dtrail_.size();
        const Mask d = dom_[static_cast<std::size_t>(branch_choice)];
        std::vector<int> failed;
        int best = -1;
        std::pair<Time, std::uint64_t> best_key_v{kInf, 0};
        for_each_value(d, [&](int v) {
            fix_value(branch_choice, v);
            const bool ok = propagate();
            const Time key = ok ? (pick >= 0 ? eL_[static_cast<std::size_t>(pick)] : cL_) : kInf;
            undo(tmark, dmark);
            if (!ok) {
                failed.push_back(v);
                return;
            }
            const std::pair<Time, std::uint64_t> k{
                key, mix(params_.seed ^ (static_cast<std::uint64_t>(branch_choice) << 7) ^ static_cast<std::uint64_t>(v))};
            if (best < 0 || k < best_key_v) {
                best = v;
                best_key_v = k;
            }
        });
        for (int v : failed)
            if (!remove_value(branch_choice, v)) return false;
        if (best < 0) return false;
        if (!failed.empty()) {
            pruned = true;
            return true;
        }
        left = {DecisionKind::ChoiceEq, branch_choice, best};
        right = {DecisionKind::ChoiceNeq, branch_choice, best};
        return true;
    }
    const auto i = static_cast<std::size_t>(pick);
    if (sL_[i] != sU_[i]) {
        left = {DecisionKind::StartLe, pick, sL_[i]};
        right = {DecisionKind::StartGe, pick, sL_[i] + 1};
    } else {
        left = {DecisionKind::EndLe, pick, eL_[i]};
        right = {DecisionKind::EndGe, pick, eL_[i] + 1};
    }
    return true;
}

Solution Solver::extract() const {
    Solution s;
    s.start = sL_;
    s.end = eL_;
    for (std::size_t c = 0; c < dom_.size(); ++c) s.choice.push_back(fixed_index(static_cast<int>(c)));
    s.objective = objective_of(m_, s);
    return s;
}

SearchResult Solver::run() {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    SearchResult res;
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    if (params_.hint) {
        Solution h = *params_.hint;
        if (h.start.size() == m_.tasks.size() && h.end.size() == m_.tasks.size() && h.choice.size() == m_.choices.size()) {
            h.objective = objective_of(m_, h);
            if (verify(m_, h).empty()) {
                res.incumbent = std::move(h);
                res.solutions = 1;
                cutoff_ = res.incumbent->objective - 1;
            }
        }
    }

    struct Frame {
        std::size_t tmark, dmark;
        Decision right;
        Time bound;  // bound of the node the frame was pushed from
    };
    std::vector<Frame> stack;
    bool ok = propagate();
    bool exhausted = false;

    for (;;) {
        if (!ok) {
            if (stack.empty()) {
                exhausted = true;
                break;
            }
            Frame f = stack.back();
            stack.pop_back();
            undo(f.tmark, f.dmark);
            ok = apply(f.right) && propagate();
            continue;
        }
        if ((params_.node_limit >= 0 && res.nodes >= params_.node_limit) ||
            (params_.time_limit >= 0 && (res.nodes & 63) == 0 && elapsed() > params_.time_limit))
            break;
        ++res.nodes;
        Decision l{}, r{};
        bool leaf = false;
        bool pruned = false;
        ok = choose(l, r, leaf, pruned);
        if (ok && pruned) {
            ok = propagate();
            continue;
        }
        if (!ok) continue;
        if (leaf) {
            Solution s = extract();
            if (verify(m_, s).empty() && (!res.incumbent || s.objective < res.incumbent->objective)) {
                res.incumbent = std::move(s);
                ++res.solutions;
                cutoff_ = res.incumbent->objective - 1;
            }
            ok = false;
            continue;
        }
        stack.push_back({trail_.size(), dtrail_.size(), r, cL_});
        ok = apply(l) && propagate();
    }

    if (exhausted) {
        res.status = res.incumbent ? Status::Optimal : Status::Infeasible;
        res.lower_bound = res.incumbent ? res.incumbent->objective : kInf;
    } else {
        Time lb = cL_;
        for (const auto& f : stack) lb = std::min(lb, f.bound);
        if (res.incumbent) lb = std::min(lb, res.incumbent->objective);
        res.lower_bound = lb;
        res.status = res.incumbent ? Status::Feasible : Status::Unknown;
    }
    res.seconds = elapsed();
    return res;
}

}  // namespace

void check_model(const Model& m) {
    const int nt = static_cast<int>(m.tasks.size());
    for (std::size_t c = 0; c < m.choices.size(); ++c) {
        const auto n = m.choices[c].values.size();
        if (n == 0 || n > static_cast<std::size_t>(kMaxValues))
            throw std::invalid_argument("choice " + m.choices[c].name + ": domain must hold 1 to 64 values");
    }
    for (const auto& t : m.tasks) {
        check_term(m, t.duration, "task " + t.name);
        if (t.duration.b >= 0) throw std::invalid_argument("task " + t.name + ": duration may depend on one choice only");
        for (Time d : t.duration.table)
            if (d < 0) throw std::invalid_argument("task " + t.name + ": negative duration");
        if (t.free_duration && (t.free_min < 0 || t.free_min > t.free_max))
            throw std::invalid_argument("task " + t.name + ": bad free duration range");
        if (t.est < 0 || t.est > t.lct) throw std::invalid_argument("task " + t.name + ": bad time window");
    }
    auto check_task = [&](int i, const std::string& where) {
        if (i < 0 || i >= nt) throw std::invalid_argument(where + ": unknown task");
    };
    for (const auto& o : m.offsets) {
        check_task(o.after, "offset");
        check_task(o.before, "offset");
        check_term(m, o.delta, "offset");
    }
    for (const auto& p : m.precedences) {
        check_task(p.before, "precedence");
        check_task(p.after, "precedence");
        check_term(m, p.delta, "precedence");
    }
    for (const auto& r : m.resources) {
        if (r.capacity < 0) throw std::invalid_argument("resource " + r.name + ": negative capacity");
        for (const auto& e : r.entries) {
            check_task(e.task, "resource " + r.name);
            check_term(m, e.weight, "resource " + r.name);
            if (e.weight.b >= 0) throw std::invalid_argument("resource " + r.name + ": weight may depend on one choice only");
            for (Time w : e.weight.table)
                if (w < 0) throw std::invalid_argument("resource " + r.name + ": negative weight");
            check_literal(m, e.active, "resource " + r.name);
        }
    }
    for (const auto& cb : m.conditionals)
        for (const auto& l : cb.when) check_literal(m, l, "conditional bound");
    for (int i : m.objective_tasks) check_task(i, "objective");
    if (m.horizon < 0) throw std::invalid_argument("negative horizon");
}

Time objective_of(const Model& m, const Solution& s) {
    Time obj = m.objective_floor;
    for (int t : m.objective_tasks) obj = std::max(obj, s.end[static_cast<std::size_t>(t)]);
    for (const auto& cb : m.conditionals) {
        const bool match = std::all_of(cb.when.begin(), cb.when.end(), [&](const Literal& l) { return literal_holds(l, s.choice); });
        if (match && cb.zeta < kInf) obj = std::max(obj, cb.zeta);
    }
    return obj;
}

std::vector<std::string> verify(const Model& m, const Solution& s) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& msg) { out.push_back(msg); };
    const std::size_t nt = m.tasks.size();
    if (s.start.size() != nt || s.end.size() != nt || s.choice.size() != m.choices.size()) {
        fail("solution shape does not match the model");
        return out;
    }
    for (std::size_t c = 0; c < m.choices.size(); ++c)
        if (s.choice[c] < 0 || s.choice[c] >= static_cast<int>(m.choices[c].values.size())) {
            fail("choice " + m.choices[c].name + " has no valid value");
            return out;
        }
    const Time horizon = m.horizon < kInf ? m.horizon : default_horizon(m);
    for (std::size_t i = 0; i < nt; ++i) {
        const auto& t = m.tasks[i];
        const Time d = s.end[i] - s.start[i];
        if (s.start[i] < t.est || s.end[i] > t.lct || s.end[i] > horizon) fail("task " + t.name + " outside its window");
        if (t.free_duration) {
            if (d < t.free_min || d > t.free_max) fail("task " + t.name + " has a duration outside its range");
        } else if (d != term_value(m, t.duration, s.choice)) {
            fail("task " + t.name + " has the wrong duration");
        }
    }
    for (const auto& o : m.offsets) {
        const auto a = static_cast<std::size_t>(o.after), b = static_cast<std::size_t>(o.before);
        if (s.start[a] != s.end[b] + term_value(m, o.delta, s.choice))
            fail("offset between " + m.tasks[b].name + " and " + m.tasks[a].name + " violated");
    }
    for (const auto& p : m.precedences) {
        const auto a = static_cast<std::size_t>(p.before), b = static_cast<std::size_t>(p.after);
        if (s.end[a] + term_value(m, p.delta, s.choice) > s.start[b])
            fail("precedence " + m.tasks[a].name + " -> " + m.tasks[b].name + " violated");
    }
    for (const auto& r : m.resources) {
        std::vector<std::pair<Time, Time>> ev;
        for (const auto& e : r.entries) {
            if (!literal_holds(e.active, s.choice)) continue;
            const auto i = static_cast<std::size_t>(e.task);
            const Time w = term_value(m, e.weight, s.choice);
            if (w > 0 && s.start[i] < s.end[i]) {
                ev.push_back({s.start[i], w});
                ev.push_back({s.end[i], -w});
            }
        }
        // releases sort before acquisitions at equal times
        std::sort(ev.begin(), ev.end());
        Time level = 0;
        for (const auto& [t, dw] : ev) {
            level += dw;
            if (level > r.capacity) {
                fail("resource " + r.name + " overloaded at t=" + std::to_string(t));
                break;
            }
        }
    }
    for (const auto& cb : m.conditionals) {
        const bool match = std::all_of(cb.when.begin(), cb.when.end(), [&](const Literal& l) { return literal_holds(l, s.choice); });
        if (match && cb.zeta >= kInf) fail("solution uses an excluded combination");
    }
    if (s.objective != objective_of(m, s)) fail("stored objective differs from the recomputed one");
    return out;
}

SearchResult solve(const Model& m, const SearchParams& params) {
    check_model(m);
    Solver solver(m, params);
    return solver.run();
}

}  // namespace hffs::engine
