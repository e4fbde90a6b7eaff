#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace bakerlab {

enum class Errc {
  invalid_argument,
  numeric_overflow,
  division_by_zero_at_anchor,
  anchor_not_fixed,
  outside_unit_disc,
  invalid_boundary_distance,
  query_outside_domain,
  oracle_inconclusive,
  segment_exits_domain,
  no_fixed_point_found,
  degenerate_newton_step,
  not_a_cycle,
  not_in_linearizable_basin,
  koenigs_requires_attracting,
  curve_tracing_stalled,
  no_secondary_fixed_point,
  secondary_not_attracting,
  branch_lost,
  fold_suspected,
  statistic_undefined,
  identity_check_infeasible,
};

std::string_view to_string(Errc code) noexcept;

/// Library error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// An error raised after useful partial work; the partial result rides along.
template <class Partial>
class PartialResultError : public Error {
 public:
  PartialResultError(Errc code, const std::string& what, Partial partial)
      : Error(code, what), partial_(std::move(partial)) {}

  const Partial& partial() const noexcept { return partial_; }

 private:
  Partial partial_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::numeric_overflow: return "numeric overflow";
    case Errc::division_by_zero_at_anchor: return "division by zero at anchor";
    case Errc::anchor_not_fixed: return "anchor not fixed";
    case Errc::outside_unit_disc: return "outside unit disc";
    case Errc::invalid_boundary_distance: return "invalid boundary distance";
    case Errc::query_outside_domain: return "query outside domain";
    case Errc::oracle_inconclusive: return "oracle inconclusive";
    case Errc::segment_exits_domain: return "segment exits domain";
    case Errc::no_fixed_point_found: return "no fixed point found near guess";
    case Errc::degenerate_newton_step: return "degenerate Newton step";
    case Errc::not_a_cycle: return "not a cycle";
    case Errc::not_in_linearizable_basin: return "point not in linearizable basin";
    case Errc::koenigs_requires_attracting:
      return "Koenigs requires attracting non-super fixed point";
    case Errc::curve_tracing_stalled: return "curve tracing stalled";
    case Errc::no_secondary_fixed_point: return "no secondary fixed point located";
    case Errc::secondary_not_attracting: return "secondary fixed point not attracting";
    case Errc::branch_lost: return "branch lost";
    case Errc::fold_suspected: return "fold suspected";
    case Errc::statistic_undefined: return "statistic undefined at 1";
    case Errc::identity_check_infeasible:
      return "identity check infeasible at this parameter";
  }
  return "unknown error";
}

}  // namespace bakerlab
