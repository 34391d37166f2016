#include "rrsp/recsolve.hpp"

#include "rrsp/error.hpp"
#include "rrsp/oracle.hpp"

namespace rrsp {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Auto: return "auto";
    case Method::MinMax: return "minmax";
    case Method::Layered: return "layered";
    case Method::Acyclic: return "acyclic";
    case Method::Asp: return "asp";
    case Method::Oracle: return "oracle";
  }
  return "auto";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : {Method::Auto, Method::MinMax, Method::Layered, Method::Acyclic, Method::Asp,
                   Method::Oracle})
    if (text == to_string(m)) return m;
  return std::nullopt;
}

Solution solve(const Instance& inst, const SolveOptions& options) {
  require_valid(inst);
  if (!is_interval(inst.uncertainty))
    throw Error(ErrorKind::Validation,
                "exact solvers handle interval uncertainty only; use approx or the MIP export");
  switch (options.method) {
    case Method::MinMax:
      if (inst.k != 0) throw Error(ErrorKind::Validation, "the min-max method requires k = 0");
      return solve_minmax_k0(inst);
    case Method::Layered: return solve_layered(inst);
    case Method::Acyclic: return solve_acyclic(inst, options.parallel);
    case Method::Asp: return solve_asp(inst);
    case Method::Oracle: return oracle_recsp(inst, options.oracle_cap);
    case Method::Auto: break;
  }
  const StructureClass cls = classify(inst.graph);
  if (cls.kind == StructureKind::General)
    throw Error(ErrorKind::UnsupportedStructure,
                "exact solving needs an acyclic graph; export the MIP model instead");
  if (inst.k == 0) return solve_minmax_k0(inst);
  switch (cls.kind) {
    case StructureKind::Asp: return solve_asp(inst);
    case StructureKind::Layered: return solve_layered(inst);
    default: return solve_acyclic(inst, options.parallel);
  }
}

}  // namespace rrsp
