#include "qmc/scheduler.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include <fmt/format.h>

namespace qmc {

std::string_view to_string(CostModelKind k) {
  switch (k) {
  case CostModelKind::UNITS_TELEPORT: return "A";
  case CostModelKind::UNITS_EPR_PIPELINED: return "B";
  case CostModelKind::TIMED: return "C";
  }
  return "?";
}

CostModelKind parse_cost_model(std::string_view s) {
  if (s == "A" || s == "a") return CostModelKind::UNITS_TELEPORT;
  if (s == "B" || s == "b") return CostModelKind::UNITS_EPR_PIPELINED;
  if (s == "C" || s == "c") return CostModelKind::TIMED;
  throw std::invalid_argument(fmt::format("unknown cost model '{}' (expected A, B or C)", s));
}

Time TimingModel::duration(DurationClass d) const {
  switch (d) {
  case DurationClass::T_CCNOT: return t_ccnot;
  case DurationClass::T_CNOT: return t_cnot;
  case DurationClass::T_NOT: return t_not;
  case DurationClass::T_EPR: return t_epr;
  case DurationClass::T_CLASSICAL: return t_classical;
  case DurationClass::T_LOCAL_1Q: return t_local_1q;
  case DurationClass::ZERO: return 0;
  }
  return 0;
}

Time TimingModel::duration(const Gate& g) const {
  return duration(duration_class(g.kind, g.operands.size())) * duration_multiplicity(g.kind);
}

void TimingModel::validate() const {
  for (Time t : {t_ccnot, t_cnot, t_not, t_classical, t_epr, t_local_1q}) {
    if (t < 0) throw std::invalid_argument("timings must be nonnegative");
  }
}

std::vector<Time> sweep_t_epr() {
  std::vector<Time> out;
  for (Time t = 10; t <= 1280; t *= 2) out.push_back(t);
  return out;
}

std::string CostModel::units() const {
  switch (kind) {
  case CostModelKind::UNITS_TELEPORT: return "teleports";
  case CostModelKind::UNITS_EPR_PIPELINED: return "eprs";
  case CostModelKind::TIMED: return "ns";
  }
  return "";
}

std::vector<std::vector<int>> scheduling_deps(const Circuit& c) {
  std::vector<int> idiom_of;
  find_idioms(c, &idiom_of);
  struct Track {
    char role = 0;
    std::vector<int> group;  // current run of mutually commuting uses
    std::vector<int> prev;   // the run before it
  };
  std::vector<Track> track(c.num_qubits());
  std::vector<bool> is_tx(c.num_qubits());
  for (std::size_t q = 0; q < c.num_qubits(); ++q) {
    is_tx[q] = is_transceiver_name(c.qubit_name(static_cast<int>(q)));
  }
  std::vector<std::vector<int>> deps(c.size());
  for (const auto& g : c.gates()) {
    auto& d = deps[g.id];
    for (std::size_t pos = 0; pos < g.operands.size(); ++pos) {
      auto& t = track[g.operands[pos]];
      if (is_tx[g.operands[pos]] && !t.group.empty() && idiom_of[t.group.back()] != idiom_of[g.id]) {
        t = Track{};
      }
      const char r = operand_role(g.kind, pos, g.operands.size());
      if (r != 'o' && r == t.role) {
        d.insert(d.end(), t.prev.begin(), t.prev.end());
        t.group.push_back(g.id);
      } else {
        d.insert(d.end(), t.group.begin(), t.group.end());
        t.prev = std::move(t.group);
        t.group = {g.id};
        t.role = r;
      }
    }
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }
  return deps;
}

namespace {

struct Task {
  std::vector<int> gates;
  Time duration = 0;
  std::vector<int> preds;        // must have finished
  std::vector<int> start_preds;  // must have started
  std::vector<std::pair<int, int>> hops;  // node pairs needing an EPR claim
  // Model C: for each hop, the tasks consuming the two EPR halves.
  std::vector<std::array<int, 2>> consumers;
  bool prefetch = false;  // may start ahead of start_preds, in node order
};

struct TaskGraph {
  std::vector<Task> tasks;
  std::vector<int> task_of;  // gate -> task
};

void dedupe(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

TaskGraph build_tasks(const Circuit& c, const CostModel& cm, bool monolithic) {
  TaskGraph tg;
  tg.task_of.assign(c.size(), -1);
  std::vector<std::vector<int>> deps;
  if (monolithic) {
    for (const auto& g : c.gates()) deps.push_back(g.deps);
  } else {
    deps = scheduling_deps(c);
  }
  std::vector<Idiom> idioms;
  std::vector<int> idiom_of(c.size(), -1);
  if (!monolithic) {
    idioms = find_idioms(c, &idiom_of);
  }
  auto hop_of = [&](const Gate& g) { return std::pair{c.node(g.operands[0]), c.node(g.operands[1])}; };

  for (const auto& g : c.gates()) {
    if (tg.task_of[g.id] >= 0) continue;
    const int id = static_cast<int>(tg.tasks.size());
    Task t;
    if (cm.kind == CostModelKind::UNITS_TELEPORT && idiom_of[g.id] >= 0) {
      const auto& idm = idioms[idiom_of[g.id]];
      for (int k = idm.first; k <= idm.last; ++k) {
        t.gates.push_back(k);
        tg.task_of[k] = id;
      }
      for (int e : idm.eprs) t.hops.push_back(hop_of(c.gate(e)));
      t.duration = 1;
    } else {
      t.gates = {g.id};
      tg.task_of[g.id] = id;
      const bool epr = g.kind == GateKind::EPR_CREATE;
      if (epr) t.hops.push_back(hop_of(g));
      switch (cm.kind) {
      case CostModelKind::UNITS_TELEPORT: t.duration = 0; break;
      case CostModelKind::UNITS_EPR_PIPELINED: t.duration = epr ? 1 : 0; break;
      case CostModelKind::TIMED: t.duration = cm.timings.duration(g); break;
      }
    }
    tg.tasks.push_back(std::move(t));
  }
  for (auto& t : tg.tasks) {
    const int self = tg.task_of[t.gates.front()];
    for (int g : t.gates) {
      for (int p : deps[g]) {
        if (tg.task_of[p] != self) t.preds.push_back(tg.task_of[p]);
      }
    }
    dedupe(t.preds);
  }
  if (cm.kind == CostModelKind::UNITS_TELEPORT) {
    return tg;
  }
  // EPR creation does not wait for data.  Under model C a pair may be made
  // once everything its idiom depends on has started, or earlier when it is
  // the next pair due at both of its nodes in circuit order (see Engine).
  for (const auto& idm : idioms) {
    std::vector<int> external;
    for (int k = idm.first; k <= idm.last; ++k) {
      for (int p : deps[k]) {
        if (p < idm.first) external.push_back(tg.task_of[p]);
      }
    }
    dedupe(external);
    for (int e : idm.eprs) {
      const int te = tg.task_of[e];
      auto& t = tg.tasks[te];
      t.preds.clear();
      const auto& eg = c.gate(e);
      if (cm.kind == CostModelKind::TIMED) {
        t.start_preds = external;
        t.prefetch = true;
      }
      // A half is consumed when it is measured, or else by the last idiom
      // gate that touches it.
      std::array<int, 2> cons{te, te};
      std::array<bool, 2> measured{false, false};
      for (int k = e + 1; k <= idm.last; ++k) {
        const auto& g = c.gate(k);
        for (int h = 0; h < 2; ++h) {
          if (measured[h] || std::find(g.operands.begin(), g.operands.end(), eg.operands[h]) == g.operands.end()) {
            continue;
          }
          cons[h] = tg.task_of[k];
          measured[h] = g.kind == GateKind::MEASURE;
        }
      }
      t.consumers.push_back(cons);
    }
  }
  return tg;
}

class Engine {
public:
  Engine(const TaskGraph& tg, const ResourceSet* rs, CostModelKind kind)
      : tg_(tg), rs_(rs), kind_(kind), n_(tg.tasks.size()) {
    const auto& tasks = tg.tasks;
    succ_.resize(n_);
    start_succ_.resize(n_);
    waiting_.assign(n_, 0);
    waiting_start_.assign(n_, 0);
    for (std::size_t t = 0; t < n_; ++t) {
      for (int p : tasks[t].preds) succ_[p].push_back(static_cast<int>(t));
      for (int p : tasks[t].start_preds) start_succ_[p].push_back(static_cast<int>(t));
      waiting_[t] = static_cast<int>(tasks[t].preds.size());
      waiting_start_[t] = static_cast<int>(tasks[t].start_preds.size());
    }
    prio_.assign(n_, 0);
    for (std::size_t i = n_; i-- > 0;) {
      Time best = 0;
      for (int s : succ_[i]) best = std::max(best, prio_[s]);
      Time p = tasks[i].duration + best;
      for (int s : start_succ_[i]) p = std::max(p, prio_[s]);
      prio_[i] = p;
    }
    if (rs_) {
      holder_.assign(rs_->total(), -1);
      free_channels_ = rs_->channels;
      free_tx_ = rs_->m * 2;
    }
    event_of_.assign(n_, -1);
    pending_release_.resize(n_);
    queued_.assign(n_, false);
    started_.assign(n_, false);
    for (std::size_t t = 0; t < n_; ++t) {
      if (!tasks[t].prefetch) continue;
      for (int node : {tasks[t].hops[0].first, tasks[t].hops[0].second}) {
        node_queue_[node].push_back(static_cast<int>(t));
      }
    }
  }

  Schedule run() {
    for (std::size_t t = 0; t < n_; ++t) {
      if (waiting_[t] == 0 && waiting_start_[t] == 0) make_ready(static_cast<int>(t));
    }
    for (const auto& [node, q] : node_queue_) {
      if (!q.empty()) offer_prefetch(q.front());
    }
    Time now = 0;
    std::size_t done = 0;
    while (done < n_) {
      bool progress = true;
      while (progress) {
        progress = false;
        while (!running_.empty() && running_.top().first <= now) {
          const int t = running_.top().second;
          running_.pop();
          finish(t, now);
          ++done;
          progress = true;
        }
        if (scan(now)) progress = true;
      }
      if (done == n_) break;
      if (running_.empty()) {
        throw SchedulerError(deadlock_report());
      }
      now = running_.top().first;
    }
    s_.makespan = 0;
    for (const auto& e : s_.events) {
      s_.makespan = std::max(s_.makespan, e.end);
      for (const auto& h : e.holds) s_.busy[h.resource] += h.end - h.start;
    }
    std::stable_sort(s_.events.begin(), s_.events.end(),
                     [](const Event& a, const Event& b) { return a.start < b.start; });
    return std::move(s_);
  }

private:
  using Entry = std::pair<Time, int>;

  void make_ready(int t) {
    if (queued_[t] || started_[t]) return;
    queued_[t] = true;
    if (tg_.tasks[t].hops.empty()) {
      start(t, now_hint_, {});
    } else {
      const std::pair<Time, int> key{-prio_[t], t};
      ready_.insert(key);
      if (scanning_ && key < cursor_) fresh_.insert(key);
    }
  }

  // A pair that is next in line at both of its nodes may be made early.
  void offer_prefetch(int t) {
    const auto& hop = tg_.tasks[t].hops[0];
    for (int node : {hop.first, hop.second}) {
      const auto& q = node_queue_[node];
      std::size_t h = head_[node];
      while (h < q.size() && started_[q[h]]) ++h;
      if (h == q.size() || q[h] != t) return;
    }
    make_ready(t);
  }

  bool scan(Time now) {
    now_hint_ = now;
    bool any = false;
    // Claims only shrink the free pool during a scan, so a task that failed
    // once stays blocked; only tasks readied meanwhile need a look.
    scanning_ = true;
    for (auto it = ready_.begin(); it != ready_.end() && room();) {
      const auto key = *it;
      cursor_ = key;
      if (!attempt(key, now)) {
        ++it;
        continue;
      }
      any = true;
      while (!fresh_.empty() && room()) {
        const auto f = *fresh_.begin();
        fresh_.erase(fresh_.begin());
        attempt(f, now);
      }
      fresh_.clear();
      it = ready_.upper_bound(key);
    }
    scanning_ = false;
    fresh_.clear();
    return any;
  }

  // Starts a ready task if its resources are free.  Tasks readied as a side
  // effect ahead of `key` go to fresh_.
  bool attempt(std::pair<Time, int> key, Time now) {
    const int t = key.second;
    auto claim = try_claim(tg_.tasks[t]);
    if (!claim) return false;
    ready_.erase(key);
    start(t, now, *claim);
    return true;
  }

  bool room() const {
    if (!rs_) return true;
    return free_tx_ >= 2 && (rs_->channels == 0 || free_channels_ >= 1);
  }

  std::optional<std::vector<std::vector<int>>> try_claim(const Task& t) {
    std::vector<std::vector<int>> picked;
    std::set<int> used;
    for (const auto& [u, v] : t.hops) {
      bool found = false;
      for (const auto& opt : claim_options(*rs_, u, v)) {
        bool ok = true;
        for (int r : opt) ok = ok && holder_[r] < 0 && !used.count(r);
        if (!ok) continue;
        used.insert(opt.begin(), opt.end());
        picked.push_back(opt);
        found = true;
        break;
      }
      if (!found) {
        if (claim_options(*rs_, u, v).empty()) {
          throw SchedulerError(fmt::format("nodes {} and {} cannot exchange EPR pairs on this topology", u, v));
        }
        return std::nullopt;
      }
    }
    return picked;
  }

  void take(int r, bool on) {
    const bool channel = r < rs_->channels;
    if (channel) free_channels_ += on ? -1 : 1;
    else free_tx_ += on ? -1 : 1;
  }

  void start(int t, Time now, const std::vector<std::vector<int>>& claim) {
    const auto& task = tg_.tasks[t];
    Event e;
    e.gates = task.gates;
    e.start = now;
    e.end = now + task.duration;
    const int ev = static_cast<int>(s_.events.size());
    for (std::size_t h = 0; h < claim.size(); ++h) {
      for (int r : claim[h]) {
        holder_[r] = t;
        take(r, true);
        int releaser = t;
        if (kind_ == CostModelKind::TIMED && r >= rs_->channels) {
          // The transceiver keeps its EPR half until the idiom consumes it.
          const int side = r == claim[h][claim[h].size() - 2] ? 0 : 1;
          releaser = task.consumers[h][side];
        }
        pending_release_[releaser].push_back({ev, static_cast<int>(e.holds.size())});
        e.holds.push_back({r, now, e.end});
      }
    }
    event_of_[t] = ev;
    started_[t] = true;
    s_.events.push_back(std::move(e));
    if (task.prefetch) {
      for (int node : {task.hops[0].first, task.hops[0].second}) {
        auto& q = node_queue_[node];
        auto& h = head_[node];
        while (h < q.size() && started_[q[h]]) ++h;
        if (h < q.size()) offer_prefetch(q[h]);
      }
    }
    running_.push({now + task.duration, t});
    for (int s : start_succ_[t]) {
      if (--waiting_start_[s] == 0 && waiting_[s] == 0) make_ready(s);
    }
  }

  void finish(int t, Time now) {
    for (const auto& [ev, h] : pending_release_[t]) {
      auto& hold = s_.events[ev].holds[h];
      hold.end = std::max(hold.end, now);
      holder_[hold.resource] = -1;
      take(hold.resource, false);
    }
    now_hint_ = now;
    for (int s : succ_[t]) {
      if (--waiting_[s] == 0 && waiting_start_[s] == 0) make_ready(s);
    }
  }

  std::string deadlock_report() const {
    std::string out = "resource deadlock; blocked tasks:";
    int shown = 0;
    for (const auto& [p, t] : ready_) {
      if (shown++ == 5) break;
      out += fmt::format(" gate {}", tg_.tasks[t].gates.front());
      for (std::size_t r = 0; r < holder_.size(); ++r) {
        if (holder_[r] >= 0) out += fmt::format(" [r{} held by gate {}]", r, tg_.tasks[holder_[r]].gates.front());
      }
    }
    return out;
  }

  const TaskGraph& tg_;
  const ResourceSet* rs_;
  CostModelKind kind_;
  std::size_t n_;
  std::vector<std::vector<int>> succ_, start_succ_;
  std::vector<int> waiting_, waiting_start_;
  std::vector<Time> prio_;
  std::set<std::pair<Time, int>> ready_;
  std::set<std::pair<Time, int>> fresh_;
  std::pair<Time, int> cursor_{};
  bool scanning_ = false;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> running_;
  std::vector<int> holder_;
  int free_channels_ = 0;
  int free_tx_ = 0;
  std::vector<int> event_of_;
  std::vector<std::vector<std::pair<int, int>>> pending_release_;
  std::vector<bool> queued_, started_;
  std::map<int, std::vector<int>> node_queue_;  // prefetchable pairs per node
  std::map<int, std::size_t> head_;
  Time now_hint_ = 0;
  Schedule s_;
};

Topology topology_of(const Distributed& d) { return Topology{d.topology, d.placement.nodes}; }

}  // namespace

Schedule schedule(const Distributed& d, const CostModel& cm) {
  cm.timings.validate();
  const auto tg = build_tasks(d.circuit, cm, false);
  const auto rs = build_resources(topology_of(d));
  return Engine(tg, &rs, cm.kind).run();
}

Schedule schedule_monolithic(const Circuit& c, const TimingModel& tm) {
  tm.validate();
  const auto tg = build_tasks(c, CostModel::timed(tm), true);
  return Engine(tg, nullptr, CostModelKind::TIMED).run();
}

std::string validate_schedule(const Schedule& s, const Distributed& d, const CostModel& cm) {
  const auto tg = build_tasks(d.circuit, cm, false);
  const auto rs = build_resources(topology_of(d));
  std::vector<const Event*> ev(tg.tasks.size(), nullptr);
  for (const auto& e : s.events) {
    if (e.gates.empty()) return "event without gates";
    const int t = tg.task_of.at(e.gates.front());
    if (ev[t]) return fmt::format("gate {} scheduled twice", e.gates.front());
    if (tg.tasks[t].gates != e.gates) return fmt::format("event at gate {} has the wrong gate set", e.gates.front());
    ev[t] = &e;
  }
  for (std::size_t t = 0; t < tg.tasks.size(); ++t) {
    if (!ev[t]) return fmt::format("gate {} never scheduled", tg.tasks[t].gates.front());
  }
  // Latest start among the earlier prefetchable pairs at each node.
  std::map<std::pair<int, int>, Time> latest_before;
  {
    std::map<int, Time> latest;
    for (std::size_t t = 0; t < tg.tasks.size(); ++t) {
      if (!tg.tasks[t].prefetch) continue;
      for (int node : {tg.tasks[t].hops[0].first, tg.tasks[t].hops[0].second}) {
        auto it = latest.find(node);
        latest_before[{node, static_cast<int>(t)}] = it == latest.end() ? 0 : it->second;
        latest[node] = std::max(it == latest.end() ? Time{0} : it->second, ev[t]->start);
      }
    }
  }
  Time makespan = 0;
  for (std::size_t t = 0; t < tg.tasks.size(); ++t) {
    const auto& task = tg.tasks[t];
    const Event* e = ev[t];
    makespan = std::max(makespan, e->end);
    if (e->end - e->start != task.duration) {
      return fmt::format("gate {} lasts {} instead of {}", task.gates.front(), e->end - e->start, task.duration);
    }
    for (int p : task.preds) {
      if (ev[p] && e->start < ev[p]->end) {
        return fmt::format("gate {} starts at {} before gate {} ends at {}", task.gates.front(), e->start,
                           tg.tasks[p].gates.front(), ev[p]->end);
      }
    }
    bool early = false;
    for (int p : task.start_preds) {
      early = early || (ev[p] && e->start < ev[p]->start);
    }
    if (early && !task.prefetch) {
      return fmt::format("gate {} starts before its dependencies", task.gates.front());
    }
    if (early) {
      // Early pairs must follow circuit order at both of their nodes.
      for (int node : {task.hops[0].first, task.hops[0].second}) {
        if (latest_before[{node, static_cast<int>(t)}] > e->start) {
          return fmt::format("EPR gate {} made ahead of an earlier pair at node {}", task.gates.front(), node);
        }
      }
    }
    // Every hop must hold one admissible claim.
    std::set<int> held;
    for (const auto& h : e->holds) {
      if (h.start != e->start || h.end < e->end) {
        return fmt::format("gate {} holds resource {} outside its event", task.gates.front(), h.resource);
      }
      held.insert(h.resource);
    }
    std::size_t claimed = 0;
    for (const auto& [u, v] : task.hops) {
      bool ok = false;
      for (const auto& opt : claim_options(rs, u, v)) {
        if (std::all_of(opt.begin(), opt.end(), [&](int r) { return held.count(r); })) {
          ok = true;
          claimed += opt.size();
          for (int r : opt) held.erase(r);
          break;
        }
      }
      if (!ok) return fmt::format("gate {}: no admissible claim between nodes {} and {}", task.gates.front(), u, v);
    }
    if (claimed != e->holds.size()) return fmt::format("gate {} holds extra resources", task.gates.front());
  }
  if (makespan != s.makespan) return "makespan does not match the last event";
  std::map<int, std::vector<std::pair<Time, Time>>> by_resource;
  for (const auto& e : s.events) {
    for (const auto& h : e.holds) by_resource[h.resource].push_back({h.start, h.end});
  }
  for (auto& [r, iv] : by_resource) {
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i) {
      if (iv[i].first < iv[i - 1].second) {
        return fmt::format("resource {} double-booked at time {}", r, iv[i].first);
      }
    }
  }
  return {};
}

bool applicable(AdderKind adder, TopologyKind t) {
  return !(adder == AdderKind::LOOKAHEAD && t == TopologyKind::LINE);
}

Distributed distribute(AdderKind adder, int n, Strategy s, TopologyKind t) {
  const auto a = generate(adder, n);
  return rewrite(a.circuit, place(a, s), t);
}

LatencyReport latency(AdderKind adder, int n, Strategy s, TopologyKind t, const CostModel& cm, bool validate) {
  LatencyReport r;
  r.adder = adder;
  r.n = n;
  r.strategy = s;
  r.topology = t;
  r.model = cm.kind;
  if (!applicable(adder, t)) {
    return r;
  }
  const auto d = distribute(adder, n, s, t);
  const auto sched = schedule(d, cm);
  if (validate) {
    if (auto err = validate_schedule(sched, d, cm); !err.empty()) {
      throw SchedulerError("invalid schedule: " + err);
    }
  }
  r.makespan = sched.makespan;
  r.census = remote_op_census(d);
  for (const auto& [res, busy] : sched.busy) {
    r.utilization[res] = sched.makespan > 0 ? static_cast<double>(busy) / static_cast<double>(sched.makespan) : 0.0;
  }
  return r;
}

std::vector<LatencyReport> latency_table(const std::vector<AdderKind>& adders, const std::vector<int>& sizes,
                                         const std::vector<Strategy>& strategies,
                                         const std::vector<TopologyKind>& topologies, const CostModel& cm) {
  std::vector<LatencyReport> out;
  for (auto a : adders) {
    for (int n : sizes) {
      for (auto s : strategies) {
        for (auto t : topologies) {
          out.push_back(latency(a, n, s, t, cm));
        }
      }
    }
  }
  return out;
}

Time timed_latency(AdderKind adder, int n, Strategy s, TopologyKind t, const TimingModel& tm) {
  if (!applicable(adder, t)) {
    throw std::invalid_argument(fmt::format("{} is not mapped to {}", to_string(adder), to_string(t)));
  }
  return schedule(distribute(adder, n, s, t), CostModel::timed(tm)).makespan;
}

Time monolithic_latency(AdderKind adder, int n, const TimingModel& tm) {
  return schedule_monolithic(generate(adder, n).circuit, tm).makespan;
}

Time teleport_time(const TimingModel& tm) { return tm.t_local_1q + tm.t_classical + 3 * tm.t_local_1q; }

Time cdkm_line_closed_form(int n, int m, const TimingModel& tm) {
  return 2 * tm.t_epr + (m - 1) * teleport_time(tm) + (2 * static_cast<Time>(n) - 1) * tm.t_ccnot;
}

double penalty_ratio(AdderKind adder, int n, TopologyKind t, const TimingModel& tm) {
  const auto dist = timed_latency(adder, n, Strategy::TELEDATA, t, tm);
  return static_cast<double>(dist) / static_cast<double>(monolithic_latency(adder, n, tm));
}

double cdkm_line_penalty_limit(const TimingModel& tm) {
  return static_cast<double>(teleport_time(tm) + 2 * tm.t_ccnot) / static_cast<double>(2 * tm.t_ccnot);
}

double shor_adder_budget(double adder_latency_ns) {
  if (adder_latency_ns < 0) throw std::invalid_argument("latency must be nonnegative");
  return 2.8e6 * adder_latency_ns * 1e-9;
}

std::string format_duration(double seconds) {
  if (seconds < 1e-3) return fmt::format("{:.3g} us", seconds * 1e6);
  if (seconds < 1) return fmt::format("{:.3g} ms", seconds * 1e3);
  if (seconds < 120) return fmt::format("{:.3g} s", seconds);
  if (seconds < 7200) return fmt::format("{:.3g} min", seconds / 60);
  if (seconds < 172800) return fmt::format("{:.3g} h", seconds / 3600);
  return fmt::format("{:.3g} days", seconds / 86400);
}

}  // namespace qmc
