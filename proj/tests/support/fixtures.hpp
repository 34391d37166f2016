#pragma once

#include <rrsp/model.hpp>

namespace fixtures {

using namespace rrsp;

// Arc ids: e1=(s,a)=0, e2=(s,b)=1, e3=(a,t)=2, e4=(b,t)=3; nodes s,a,b,t = 0..3.
inline Instance d1(int k = 2, NeighborhoodKind kind = NeighborhoodKind::Incl,
                   Uncertainty u = IntervalUncertainty{}) {
  Instance inst;
  inst.graph = Multidigraph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0, 3);
  inst.graph.set_node_names({"s", "a", "b", "t"});
  inst.first_stage = {0, 2, 0, 2};
  inst.nominal = {3, 1, 3, 1};
  inst.deviation = {2, 0, 2, 0};
  inst.k = k;
  inst.neighborhood = kind;
  inst.uncertainty = u;
  inst.label = "D1";
  return inst;
}

inline const Path kP1{{0, 2}};
inline const Path kP2{{1, 3}};

inline Instance a1(int k = 0, NeighborhoodKind kind = NeighborhoodKind::Incl,
                   Uncertainty u = IntervalUncertainty{}) {
  Instance inst;
  inst.graph = Multidigraph(2, {{0, 1}}, 0, 1);
  inst.graph.set_node_names({"s", "t"});
  inst.first_stage = {3};
  inst.nominal = {2};
  inst.deviation = {5};
  inst.k = k;
  inst.neighborhood = kind;
  inst.uncertainty = u;
  inst.label = "A1";
  return inst;
}

// f1=(s,a), f2=(a,t), f3=(s,t); c-bar carried entirely by the nominal cost.
inline Instance n1(int k = 1, NeighborhoodKind kind = NeighborhoodKind::Incl) {
  Instance inst;
  inst.graph = Multidigraph(3, {{0, 1}, {1, 2}, {0, 2}}, 0, 2);
  inst.graph.set_node_names({"s", "a", "t"});
  inst.first_stage = {0, 0, 9};
  inst.nominal = {9, 9, 0};
  inst.deviation = {0, 0, 0};
  inst.k = k;
  inst.neighborhood = kind;
  inst.label = "N1";
  return inst;
}

// g1 (C=0, c-bar=5) parallel to g2 (C=2, c-bar=1).
inline Instance parallel_pair(int k = 1, NeighborhoodKind kind = NeighborhoodKind::Incl) {
  Instance inst;
  inst.graph = Multidigraph(2, {{0, 1}, {0, 1}}, 0, 1);
  inst.first_stage = {0, 2};
  inst.nominal = {5, 1};
  inst.deviation = {0, 0};
  inst.k = k;
  inst.neighborhood = kind;
  return inst;
}

inline Instance series_chain(int k = 1, NeighborhoodKind kind = NeighborhoodKind::Incl) {
  Instance inst;
  inst.graph = Multidigraph(3, {{0, 1}, {1, 2}}, 0, 2);
  inst.first_stage = {1, 3};
  inst.nominal = {2, 4};
  inst.deviation = {0, 0};
  inst.k = k;
  inst.neighborhood = kind;
  return inst;
}

}  // namespace fixtures
