#pragma once

#include <stdexcept>
#include <string>

namespace qcech {

enum class errc {
  not_a_partial_order,
  not_a_lattice,
  not_associative,
  not_distributive,
  not_commutative,
  not_closed_under_mul,
  size_cap_exceeded,
  not_a_topology,
  not_a_ring,
  not_a_function_ring,
  not_surjective,
  not_a_ring_hom,
  not_monotone,
  does_not_preserve_joins,
  not_a_cover,
  product_not_a_cover,
  not_directed,
  composition_not_zero,
  incompatible_shapes,
  path_dependence,
  bad_hom_shape,
  restriction_unavailable,
  invalid_witness,
  does_not_preserve_kernel,
  does_not_preserve_image,
  parse_error,
  validation_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_a_partial_order: return "NotAPartialOrder";
    case errc::not_a_lattice: return "NotALattice";
    case errc::not_associative: return "NotAssociative";
    case errc::not_distributive: return "NotDistributive";
    case errc::not_commutative: return "NotCommutative";
    case errc::not_closed_under_mul: return "NotClosedUnderMul";
    case errc::size_cap_exceeded: return "SizeCapExceeded";
    case errc::not_a_topology: return "NotATopology";
    case errc::not_a_ring: return "NotARing";
    case errc::not_a_function_ring: return "NotAFunctionRing";
    case errc::not_surjective: return "NotSurjective";
    case errc::not_a_ring_hom: return "NotARingHom";
    case errc::not_monotone: return "NotMonotone";
    case errc::does_not_preserve_joins: return "DoesNotPreserveJoins";
    case errc::not_a_cover: return "NotACover";
    case errc::product_not_a_cover: return "ProductNotACover";
    case errc::not_directed: return "NotDirected";
    case errc::composition_not_zero: return "CompositionNotZero";
    case errc::incompatible_shapes: return "IncompatibleShapes";
    case errc::path_dependence: return "PathDependence";
    case errc::bad_hom_shape: return "BadHomShape";
    case errc::restriction_unavailable: return "RestrictionUnavailable";
    case errc::invalid_witness: return "InvalidWitness";
    case errc::does_not_preserve_kernel: return "DoesNotPreserveKernel";
    case errc::does_not_preserve_image: return "DoesNotPreserveImage";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
  }
  return "UnknownError";
}

/// Error with a machine-readable kind and a witness description.
class error : public std::runtime_error {
 public:
  error(errc kind, std::string witness)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  errc kind() const { return kind_; }
  const std::string& witness() const { return witness_; }

 private:
  errc kind_;
  std::string witness_;
};

[[noreturn]] inline void fail(errc kind, std::string witness) {
  throw error(kind, std::move(witness));
}

}  // namespace qcech
