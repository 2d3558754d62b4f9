#include "duality/models.hpp"

#include <cmath>

namespace duality {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value))
    throw std::invalid_argument(std::string("model coupling ") + name +
                                " must be finite");
}

void add_two_site(PauliSum& h, int a, int b, PauliOp op, double coeff) {
  PauliString s(h.length());
  s.set_op(a, op);
  s.set_op(b, op);
  h.add(s, coeff);
}

void add_three_site(PauliSum& h, int left, int mid, int right, PauliOp outer,
                    PauliOp inner, double coeff) {
  PauliString s(h.length());
  s.set_op(left, outer);
  s.set_op(mid, inner);
  s.set_op(right, outer);
  h.add(s, coeff);
}

void add_field(PauliSum& h, double coeff) {
  for (int k = 0; k < h.length(); ++k)
    h.add(PauliString::single(h.length(), k, PauliOp::Z), coeff);
}

}  // namespace

std::string family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::Ising: return "ising";
    case ModelFamily::Cluster: return "cluster";
    case ModelFamily::ClusterIsing: return "cluster_ising";
    case ModelFamily::Zxz: return "zxz";
    case ModelFamily::XyField: return "xy_field";
  }
  return "?";
}

ModelFamily family_from_name(std::string_view name) {
  if (name == "ising") return ModelFamily::Ising;
  if (name == "cluster") return ModelFamily::Cluster;
  if (name == "cluster_ising" || name == "cluster-ising")
    return ModelFamily::ClusterIsing;
  if (name == "zxz") return ModelFamily::Zxz;
  if (name == "xy_field" || name == "xy-field") return ModelFamily::XyField;
  throw std::invalid_argument("unknown model family: " + std::string(name));
}

Boundary default_boundary(ModelFamily family) {
  return family == ModelFamily::Zxz ? Boundary::Periodic : Boundary::Open;
}

PauliSum build(const ModelSpec& spec) {
  require_finite(spec.J, "J");
  require_finite(spec.J1, "J1");
  require_finite(spec.J2, "J2");
  require_finite(spec.B, "B");
  const int L = spec.length;
  const bool periodic = spec.boundary == Boundary::Periodic;
  const bool three_body = spec.family == ModelFamily::Cluster ||
                          spec.family == ModelFamily::ClusterIsing ||
                          spec.family == ModelFamily::Zxz;
  if (three_body && L < 3)
    throw std::invalid_argument("three-body families need length >= 3");
  if (!three_body && L < 2)
    throw std::invalid_argument("two-body families need length >= 2");

  PauliSum h(L);
  const int bonds = periodic ? L : L - 1;
  switch (spec.family) {
    case ModelFamily::Ising:
      for (int k = 0; k < bonds; ++k)
        add_two_site(h, k, (k + 1) % L, PauliOp::X, spec.J);
      add_field(h, spec.B);
      break;
    case ModelFamily::Cluster:
    case ModelFamily::ClusterIsing: {
      const double j_cluster =
          spec.family == ModelFamily::Cluster ? spec.J : spec.J1;
      const int first = periodic ? 0 : 1;
      const int last = periodic ? L - 1 : L - 2;
      for (int k = first; k <= last; ++k)
        add_three_site(h, (k - 1 + L) % L, k, (k + 1) % L, PauliOp::X,
                       PauliOp::Z, j_cluster);
      if (spec.family == ModelFamily::ClusterIsing)
        for (int k = 0; k < bonds; ++k)
          add_two_site(h, k, (k + 1) % L, PauliOp::X, spec.J2);
      add_field(h, spec.B);
      break;
    }
    case ModelFamily::Zxz: {
      const int first = periodic ? 0 : 1;
      const int last = periodic ? L - 1 : L - 2;
      for (int k = first; k <= last; ++k)
        add_three_site(h, (k - 1 + L) % L, k, (k + 1) % L, PauliOp::Z,
                       PauliOp::X, -spec.J);
      add_field(h, spec.B);
      break;
    }
    case ModelFamily::XyField:
      for (int k = 0; k < bonds; ++k) {
        add_two_site(h, k, (k + 1) % L, PauliOp::X, spec.J1);
        add_two_site(h, k, (k + 1) % L, PauliOp::Y, spec.J2);
      }
      add_field(h, spec.B);
      break;
  }
  return h;
}

PauliSum ising_dual_target(int length, double coupling_j) {
  if (coupling_j == 0.0)
    throw std::invalid_argument(
        "ising_dual_target: J = 0 has no dual coupling");
  PauliSum target =
      build({.family = ModelFamily::Ising,
             .length = length,
             .J = 1.0 / coupling_j,
             .B = 1.0,
             .boundary = Boundary::Open});
  target *= Complex{coupling_j, 0.0};
  target.add(PauliString::single(length, length - 1, PauliOp::X), 1.0);
  target.add(PauliString::single(length, 0, PauliOp::Z), -coupling_j);
  return target;
}

PauliSum cluster_dual_target(int length, double coupling_j, double field_b) {
  PauliSum target(length);
  target.add(PauliString::single(length, length - 1, PauliOp::X), field_b);
  for (int k = 1; k + 1 < length; ++k)  // YY pairs (2,3)..(L-1,L), 1-based
    add_two_site(target, k, k + 1, PauliOp::Y, -coupling_j);
  for (int k = 0; k + 1 < length; ++k)
    add_two_site(target, k, k + 1, PauliOp::X, field_b);
  return target;
}

PauliSum cluster_ising_dual_target(int length, double j1, double j2,
                                   double field_b) {
  PauliSum target(length);
  target.add(PauliString::single(length, length - 1, PauliOp::X), field_b);
  for (int k = 0; k + 2 < length; ++k)  // YY pairs (1,2)..(L-2,L-1), 1-based
    add_two_site(target, k, k + 1, PauliOp::Y, -j1);
  for (int k = 0; k + 1 < length; ++k)
    add_two_site(target, k, k + 1, PauliOp::X, field_b);
  for (int k = 1; k < length; ++k)
    target.add(PauliString::single(length, k, PauliOp::Z), j2);
  return target;
}

DualityPair duality_residual(const ModelSpec& spec) {
  if (spec.boundary != Boundary::Open)
    throw std::invalid_argument(
        "duality_residual: the stated identities are for open boundaries");
  const Circuit circuit = ising_duality_circuit(spec.length);
  switch (spec.family) {
    case ModelFamily::Ising: {
      if (spec.B != 1.0)
        throw std::invalid_argument(
            "duality_residual: the Ising identity is stated at unit field");
      if (spec.J == 0.0)
        throw std::invalid_argument(
            "duality_residual: J = 0 has no dual coupling");
      return {conjugate(circuit, build(spec)),
              ising_dual_target(spec.length, spec.J)};
    }
    case ModelFamily::Cluster:
      return {conjugate(circuit, build(spec)),
              cluster_dual_target(spec.length, spec.J, spec.B)};
    case ModelFamily::ClusterIsing:
      return {conjugate(circuit, build(spec)),
              cluster_ising_dual_target(spec.length, spec.J1, spec.J2,
                                        spec.B)};
    default:
      throw std::invalid_argument(
          "duality_residual: no stated dual for family " +
          family_name(spec.family));
  }
}

}  // namespace duality
