#pragma once

#include <map>
#include <string>

#include "mqr/classify.hpp"
#include "mqr/quiver.hpp"

namespace mqr {

/// A parsed specification document: the marked quiver plus optional named
/// plane blocks (base representation and two direction matrices).
struct SpecDocument {
  MarkedQuiver mq;
  std::map<std::string, PlaneSpec> planes;
};

/// Line-oriented text format with '#' comments:
///
///   quiver  { vertices: d, c, b ; arrows: beta: d -> c, gamma: d -> b }
///   marking { d: k ; c: k_2 ; b: k^2 + kP{ y } }
///   field   { p: 2 }
///   plane w { dims { d: 4 ; c: o1:1, o2:1 ; b: A:2, y:2 } ;
///             base gamma [ 1 0 0 0 0 0 / 0 0 1 0 1 0 / 0 1 0 0 1 0 / 0 0 0 1 0 1 ] ;
///             dir lambda gamma [ ... ] ; dir mu gamma [ ... ] }
///
/// Vectroid forms: k | k_N | k^N | kP{ elems ; rel: a<b, ... } |
/// half{ elems ; rel: ... ; same: {a,a*} } | sums with '+' | op(FORM).
/// Unknown keys are rejected; errors carry line and column.
SpecDocument parse_spec(const std::string& text);

/// Canonical rendering; parse(serialize(d)) describes the same document.
std::string serialize_spec(const SpecDocument& doc);

}  // namespace mqr
