#include <algorithm>

#include "rrsp/error.hpp"
#include "rrsp/numeric.hpp"
#include "rrsp/recsolve.hpp"

namespace rrsp {

namespace {

using Label = DecompositionTree::Label;

// Tables per tree node, stored flat. Arrays are trimmed to the longest path
// of the subgraph, and reads past the end yield +inf.
//   free_first / free_second : cheapest path under C / c-bar (scalars)
//   first[l] / second[l]     : cheapest path with exactly l arcs, l >= 1
//   pair[l]                  : cheapest (X, Y) whose counted difference is l
class AspTables {
 public:
  AspTables(const Instance& inst, const DecompositionTree& tree)
      : inst_(inst), tree_(tree), kind_(inst.neighborhood) {
    const int k = std::min(inst.k, 2 * static_cast<int>(inst.graph.arc_count()));
    k_ = k;
    // Sym keeps exact-length arrays only up to k-1: both sides use >= 1 arc.
    exact_len_ = kind_ == NeighborhoodKind::Sym ? std::max(k - 1, 0) : k;
    upper_ = inst.upper_costs();
    const std::size_t count = tree.nodes.size();
    free_first_.assign(count, kInf);
    free_second_.assign(count, kInf);
    pair_.resize(count);
    first_.resize(count);
    second_.resize(count);
    for (std::size_t s = 0; s < count; ++s) compute(s);
  }

  std::pair<double, int> best() const {
    const auto& root = pair_[static_cast<std::size_t>(tree_.root)];
    double best = kInf;
    int at = 0;
    for (std::size_t l = 0; l < root.size(); ++l) {
      if (root[l] < best) {
        best = root[l];
        at = static_cast<int>(l);
      }
    }
    return {best, at};
  }

  Solution rebuild(int l) const;

 private:
  static double get(const std::vector<double>& v, int l) {
    return l >= 0 && static_cast<std::size_t>(l) < v.size() ? v[static_cast<std::size_t>(l)]
                                                            : kInf;
  }
  bool counts_first() const { return kind_ != NeighborhoodKind::Incl; }
  bool counts_second() const { return kind_ != NeighborhoodKind::Excl; }

  int pair_len(const DecompositionTree::Node& node) const {
    const int reach = kind_ == NeighborhoodKind::Sym ? 2 * node.max_arcs : node.max_arcs;
    return std::min(k_, reach) + 1;
  }
  int exact_size(const DecompositionTree::Node& node) const {
    return std::min(exact_len_, node.max_arcs) + 1;  // index 0 unused
  }

  void compute(std::size_t s) {
    const auto& node = tree_.nodes[s];
    std::vector<double>& pair = pair_[s];
    pair.assign(static_cast<std::size_t>(pair_len(node)), kInf);
    if (counts_first()) first_[s].assign(static_cast<std::size_t>(exact_size(node)), kInf);
    if (counts_second()) second_[s].assign(static_cast<std::size_t>(exact_size(node)), kInf);

    if (node.label == Label::Leaf) {
      const auto e = static_cast<std::size_t>(node.arc);
      free_first_[s] = inst_.first_stage[e];
      free_second_[s] = upper_[e];
      pair[0] = inst_.first_stage[e] + upper_[e];
      if (counts_first() && first_[s].size() > 1) first_[s][1] = inst_.first_stage[e];
      if (counts_second() && second_[s].size() > 1) second_[s][1] = upper_[e];
      return;
    }

    const auto a = static_cast<std::size_t>(node.left);
    const auto b = static_cast<std::size_t>(node.right);
    if (node.label == Label::Parallel) {
      free_first_[s] = std::min(free_first_[a], free_first_[b]);
      free_second_[s] = std::min(free_second_[a], free_second_[b]);
      for (int l = 0; l < static_cast<int>(pair.size()); ++l) {
        double v = std::min(get(pair_[a], l), get(pair_[b], l));
        if (l >= 1) v = std::min(v, cross(a, b, l));
        pair[static_cast<std::size_t>(l)] = v;
      }
      for (auto* arr : {&first_, &second_}) {
        auto& out = (*arr)[s];
        for (int l = 1; l < static_cast<int>(out.size()); ++l)
          out[static_cast<std::size_t>(l)] = std::min(get((*arr)[a], l), get((*arr)[b], l));
      }
      return;
    }

    free_first_[s] = free_first_[a] + free_first_[b];
    free_second_[s] = free_second_[a] + free_second_[b];
    for (int l = 0; l < static_cast<int>(pair.size()); ++l) {
      double v = kInf;
      for (int j = 0; j <= l; ++j) v = std::min(v, get(pair_[a], j) + get(pair_[b], l - j));
      pair[static_cast<std::size_t>(l)] = v;
    }
    for (auto* arr : {&first_, &second_}) {
      auto& out = (*arr)[s];
      for (int l = 2; l < static_cast<int>(out.size()); ++l) {
        double v = kInf;
        for (int j = 1; j < l; ++j) v = std::min(v, get((*arr)[a], j) + get((*arr)[b], l - j));
        out[static_cast<std::size_t>(l)] = v;
      }
    }
  }

  // X entirely in one branch, Y entirely in the other.
  double cross(std::size_t a, std::size_t b, int l) const {
    double v = kInf;
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      switch (kind_) {
        case NeighborhoodKind::Incl:
          v = std::min(v, free_first_[x] + get(second_[y], l));
          break;
        case NeighborhoodKind::Excl:
          v = std::min(v, get(first_[x], l) + free_second_[y]);
          break;
        case NeighborhoodKind::Sym:
          for (int j = 1; j < l; ++j) v = std::min(v, get(first_[x], j) + get(second_[y], l - j));
          break;
      }
    }
    return v;
  }

  friend class Rebuilder;

  const Instance& inst_;
  const DecompositionTree& tree_;
  NeighborhoodKind kind_;
  int k_ = 0;
  int exact_len_ = 0;
  std::vector<double> upper_;
  std::vector<double> free_first_;
  std::vector<double> free_second_;
  std::vector<std::vector<double>> pair_;
  std::vector<std::vector<double>> first_;
  std::vector<std::vector<double>> second_;
};

// Top-down witness recovery. Each task names a tree node, the quantity whose
// value it must reproduce, and the budget index. Argmins are recomputed by
// exact comparison with the stored value, which the bottom-up pass produced
// with the same arithmetic.
class Rebuilder {
 public:
  explicit Rebuilder(const AspTables& t) : t_(t) {}

  Solution run(int l) {
    stack_.push_back({t_.tree_.root, Want::Pair, l});
    while (!stack_.empty()) {
      const Task task = stack_.back();
      stack_.pop_back();
      step(task);
    }
    Solution sol;
    sol.first_stage = std::move(x_);
    sol.second_stage = std::move(y_);
    return sol;
  }

 private:
  enum class Want { Pair, FreeFirst, FreeSecond, ExactFirst, ExactSecond };
  struct Task {
    std::int32_t node;
    Want want;
    int l;
  };

  const std::vector<double>& exact(Want w, std::size_t s) const {
    return w == Want::ExactFirst ? t_.first_[s] : t_.second_[s];
  }

  void emit(Want w, ArcId arc) {
    if (w == Want::Pair || w == Want::FreeFirst || w == Want::ExactFirst) x_.arcs.push_back(arc);
    if (w == Want::Pair || w == Want::FreeSecond || w == Want::ExactSecond) y_.arcs.push_back(arc);
  }

  // Children are pushed right-first so the left part is emitted first.
  void both(std::int32_t left, Want wl, int jl, std::int32_t right, Want wr, int jr) {
    stack_.push_back({right, wr, jr});
    stack_.push_back({left, wl, jl});
  }

  void step(const Task& task) {
    const auto s = static_cast<std::size_t>(task.node);
    const auto& node = t_.tree_.nodes[s];
    if (node.label == Label::Leaf) {
      emit(task.want, node.arc);
      return;
    }
    const auto a = static_cast<std::size_t>(node.left);
    const auto b = static_cast<std::size_t>(node.right);
    const int l = task.l;
    const bool series = node.label == Label::Series;

    switch (task.want) {
      case Want::FreeFirst:
      case Want::FreeSecond: {
        const auto& f = task.want == Want::FreeFirst ? t_.free_first_ : t_.free_second_;
        if (series) {
          both(node.left, task.want, 0, node.right, task.want, 0);
        } else {
          stack_.push_back({f[a] == f[s] ? node.left : node.right, task.want, 0});
        }
        return;
      }
      case Want::ExactFirst:
      case Want::ExactSecond: {
        const double want = exact(task.want, s)[static_cast<std::size_t>(l)];
        if (!series) {
          stack_.push_back(
              {AspTables::get(exact(task.want, a), l) == want ? node.left : node.right,
               task.want, l});
          return;
        }
        for (int j = 1; j < l; ++j) {
          if (AspTables::get(exact(task.want, a), j) + AspTables::get(exact(task.want, b), l - j) ==
              want) {
            both(node.left, task.want, j, node.right, task.want, l - j);
            return;
          }
        }
        break;
      }
      case Want::Pair: {
        const double want = t_.pair_[s][static_cast<std::size_t>(l)];
        if (series) {
          for (int j = 0; j <= l; ++j) {
            if (AspTables::get(t_.pair_[a], j) + AspTables::get(t_.pair_[b], l - j) == want) {
              both(node.left, Want::Pair, j, node.right, Want::Pair, l - j);
              return;
            }
          }
          break;
        }
        if (AspTables::get(t_.pair_[a], l) == want) {
          stack_.push_back({node.left, Want::Pair, l});
          return;
        }
        if (AspTables::get(t_.pair_[b], l) == want) {
          stack_.push_back({node.right, Want::Pair, l});
          return;
        }
        for (auto [x, y] : {std::pair{node.left, node.right}, std::pair{node.right, node.left}}) {
          const auto xs = static_cast<std::size_t>(x);
          const auto ys = static_cast<std::size_t>(y);
          switch (t_.kind_) {
            case NeighborhoodKind::Incl:
              if (t_.free_first_[xs] + AspTables::get(t_.second_[ys], l) == want) {
                stack_.push_back({y, Want::ExactSecond, l});
                stack_.push_back({x, Want::FreeFirst, 0});
                return;
              }
              break;
            case NeighborhoodKind::Excl:
              if (AspTables::get(t_.first_[xs], l) + t_.free_second_[ys] == want) {
                stack_.push_back({y, Want::FreeSecond, 0});
                stack_.push_back({x, Want::ExactFirst, l});
                return;
              }
              break;
            case NeighborhoodKind::Sym:
              for (int j = 1; j < l; ++j) {
                if (AspTables::get(t_.first_[xs], j) + AspTables::get(t_.second_[ys], l - j) ==
                    want) {
                  stack_.push_back({y, Want::ExactSecond, l - j});
                  stack_.push_back({x, Want::ExactFirst, j});
                  return;
                }
              }
              break;
          }
        }
        break;
      }
    }
    throw Error(ErrorKind::Infeasible, "decomposition witness reconstruction failed");
  }

  const AspTables& t_;
  std::vector<Task> stack_;
  Path x_;
  Path y_;
};

Solution AspTables::rebuild(int l) const { return Rebuilder(*this).run(l); }

}  // namespace

Solution solve_asp(const Instance& inst) {
  require_valid(inst);
  if (!is_interval(inst.uncertainty))
    throw Error(ErrorKind::Validation,
                "exact solvers handle interval uncertainty only; use approx or the MIP export");
  const DecompositionTree tree = asp_decompose(inst.graph);
  const AspTables tables(inst, tree);
  const auto [value, l] = tables.best();
  if (value == kInf) throw Error(ErrorKind::Infeasible, "no feasible pair of paths");
  Solution sol = tables.rebuild(l);
  sol.value = interval_pair_value(inst, sol.first_stage, sol.second_stage);
  sol.solver = "asp";
  sol.witness = upper_bound_scenario(inst);
  return sol;
}

}  // namespace rrsp
