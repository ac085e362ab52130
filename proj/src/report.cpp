#include "bmtk/report.hpp"

#include <cmath>
#include <cstdio>

#include "bmtk/errors.hpp"

namespace bmtk {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(it.value(), indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case Json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  write(j, 0, out);
  out += "\n";
  return out;
}

double json_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  throw UsageError("expected a number, got " + j.dump());
}

Json to_json(const GridSpec& spec) {
  return {{"n", spec.dim}, {"N", spec.points}, {"L", spec.length}};
}

Json to_json(const BallFamily& balls) {
  return {{"stride", balls.stride}, {"half_widths", balls.half_widths}};
}

Json to_json(const SpaceSpec& space) {
  return {{"family", to_string(space.family)}, {"s", space.s}, {"p", space.p}, {"q", space.q},
          {"r", space.r}};
}

Json to_json(const NormResult& r) { return {{"value", r.value}, {"components", doubles(r.blocks)}}; }

Json to_json(const ScalingReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"lambda", row.lambda},
                    {"ratio", row.ratio},
                    {"envelope", row.envelope},
                    {"log_factor", row.log_factor}});
  return {{"space", to_json(r.space)},
          {"rows", rows},
          {"fitted_exponent", r.fitted_exponent},
          {"expected_exponent", r.expected_exponent},
          {"envelope_constant", r.envelope_constant}};
}

Json to_json(const EmbeddingReport& r) {
  return {{"morrey", r.morrey}, {"besov_morrey", r.besov_morrey}, {"ratio", r.ratio}};
}

Json to_json(const EquivalenceReport& r) {
  return {{"b0", r.b0},       {"grad_b0", r.grad_b0}, {"b1", r.b1},
          {"ratio", r.ratio}, {"gradient_ratio", r.gradient_ratio}};
}

Json to_json(const SupportReport& r) {
  return {{"kind", r.kind == SupportKind::LowHigh ? "low_high" : "diagonal"},
          {"block", r.block},
          {"lower", r.lower},
          {"upper", r.upper},
          {"total_mass", r.total_mass},
          {"outside_mass", r.outside_mass},
          {"ratio", r.ratio}};
}

Json to_json(const StabilityReport& r) {
  return {{"product", r.product}, {"g_norm", r.g_norm}, {"f_norm", r.f_norm}, {"ratio", r.ratio}};
}

Json to_json(const WenteReport& r) {
  return {{"u_inf", r.u_inf},
          {"grad_u_norm", r.grad_u_norm},
          {"hess_u_norm", r.hess_u_norm},
          {"data_a", r.data_a},
          {"data_b", r.data_b},
          {"data_product", r.data_product},
          {"u_ratio", r.u_ratio},
          {"grad_ratio", r.grad_ratio},
          {"hess_ratio", r.hess_ratio},
          {"residual", r.residual}};
}

Json to_json(const HessianReport& r) {
  return {{"besov_morrey", r.besov_morrey}, {"besov_inf", r.besov_inf}, {"ratio", r.ratio}};
}

Json to_json(const CounterexampleRow& r) {
  return {{"N", r.points},
          {"morrey_grad_a", r.morrey_grad_a},
          {"besov_morrey_grad_a", r.besov_morrey_grad_a},
          {"u_inf", r.u_inf}};
}

Json to_json(const GaugeEstimates& e) {
  return {{"omega_norm", e.omega_norm},
          {"grad_a", e.grad_a},
          {"grad_a_inv", e.grad_a_inv},
          {"dist_so", e.dist_so},
          {"grad_b", e.grad_b},
          {"min_det", e.min_det},
          {"grad_a_ratio", e.grad_a_ratio},
          {"grad_a_inv_ratio", e.grad_a_inv_ratio},
          {"dist_so_ratio", e.dist_so_ratio},
          {"grad_b_ratio", e.grad_b_ratio}};
}

Json to_json(const GaugePair& g) {
  return {{"residual", g.residual},
          {"iterations", g.iterations},
          {"history", doubles(g.history)},
          {"contraction", doubles(g.contraction)},
          {"estimates", to_json(g.estimates)}};
}

Json to_json(const ConservationRow& r) {
  return {{"N", r.points},
          {"gauge_residual", r.gauge_residual},
          {"pde_residual", r.pde_residual},
          {"conservation_residual", r.conservation_residual},
          {"pde_relative", r.pde_relative},
          {"omega_norm", r.omega_norm},
          {"iterations", r.iterations}};
}

}  // namespace bmtk
